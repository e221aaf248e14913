import hypercsi.systems.geometry as geometry
import hypercsi.systems.dimred as dimred
import hypercsi.systems.spa as spa
import hypercsi.systems.csi as csi
import hypercsi.systems.synth as synth
import hypercsi.systems.metrics as metrics
import hypercsi.systems.oracle as oracle
