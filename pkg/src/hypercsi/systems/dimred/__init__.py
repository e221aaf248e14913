from hypercsi.systems.dimred.affine_set import AffineSetModel, DRDataset, fit_affine_set, lift, project

__all__ = ["AffineSetModel", "DRDataset", "fit_affine_set", "lift", "project"]
