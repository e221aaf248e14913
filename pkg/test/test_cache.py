import pytest

import hypercsi.systems.synth  # noqa: F401
from hypercsi.cache import (
    cache_element,
    cached,
    config_value,
    decode_path,
    from_cache,
    get_cache,
    get_config,
    get_handler,
)


def test_get_cache():
    """
    Test that the cache object can be retrieved
    """
    assert type(get_cache()) is dict


def test_from_cache():
    """
    Test that 'from_cache' can retrieve elements stored in the cache
    """
    cache = get_cache()
    cache["element"] = 1

    assert from_cache("element") == 1

    cache["root"] = {"branch": "leaf"}

    assert from_cache("root.branch") == "leaf"
    assert from_cache(["root", "branch"]) == "leaf"


def test_cache_element():
    """
    Test that 'cache_element' can correctly store elements in the cache
    """
    # Trivial case
    assert from_cache("num") is None
    cache_element("num", 1)
    assert from_cache("num") == 1

    # recursively cached
    assert from_cache("stem.leaf") is None
    cache_element("stem.leaf", "value")
    assert from_cache("stem.leaf") == "value"
    assert from_cache(["stem", "leaf"]) == "value"


def test_from_cache_through_leaf():
    cache_element("tip", 5)

    with pytest.raises(TypeError):
        from_cache("tip.below")


def test_cache_collision():
    cache_element("flat", 3)

    with pytest.raises(KeyError):
        cache_element("flat.branch", 4)


invalid_path_cases = [3, ["a", 2], None]


@pytest.mark.parametrize("path", invalid_path_cases)
def test_decode_path_invalid(path):
    with pytest.raises(TypeError):
        decode_path(path)


def test_cached_decorator():
    @cached("test.handlers.double")
    def double(x):
        return 2 * x

    assert from_cache("test.handlers.double") is double
    assert get_handler("test.handlers", "double")(4) == 8


def test_builtin_handlers_registered():
    for kind, name in [
        ("synth.pattern", "iid-dirichlet"),
        ("synth.pattern", "block-sparse"),
        ("synth.spectra", "random-smooth"),
        ("synth.spectra", "user-file"),
    ]:
        assert callable(get_handler(kind, name))


def test_missing_handler():
    with pytest.raises(KeyError):
        get_handler("synth.pattern", "checkerboard")


def test_config_value():
    assert config_value("unmix.eta") == get_config().unmix.eta
    assert config_value("unmix.eta", 0.5) == 0.5
    assert config_value("geometry.rank_tol") == pytest.approx(1e-10)
