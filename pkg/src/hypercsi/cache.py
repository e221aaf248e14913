"""
A utility module that hosts the global config, a global registry cache, and
useful accessor/setter methods.

The registry maps dot-notated paths to objects. Scene generators register
their spectra sources and abundance patterns here so that callers can look
them up by the names that appear in flags and sweep files.
"""

from typing import Any, Callable

from loguru import logger

config: Any = None
cache: dict[str, Any] = {}


def decode_path(path: list[str] | str) -> list[str]:
    """
    Decodes a path and returns a list[str] via dot-notation.
    """

    if type(path) is not list and type(path) is not str:
        raise TypeError(f"Unexpected cache path type: {type(path)}! Allowed types are list[str] and str!")
    elif type(path) is list:
        for key in path:
            if type(key) is not str:
                raise TypeError(f"Unexpected type within a listed cache path: {type(key)}! Allowed types are str")
        return path

    return path.split(".")


def from_cache(path: list[str] | str) -> Any:
    """
    A universal cache-retrieval function.

    Elements cached can be retrieved via their dict-path using a list of keys or
    string dot-notation.

    Args:
        path: A list of nested dict keys or a string of dot notation

    Returns:
        The element in the cache stored at the lowest level of the dict-path, or
        None if nothing is stored there.
    """

    true_path = decode_path(path)

    depth = get_cache()

    try:
        for key in true_path[:-1]:  # Skip last key in path
            if key not in depth:
                raise KeyError(f"Invalid cache path key: {key}")
            if type(depth[key]) is not dict:
                raise TypeError(f"Expected key {key}'s value to be of type dict! Got {type(depth[key])} instead.")

            depth = depth[key]

        return depth[true_path[-1]]
    except KeyError as ke:
        logger.debug(f"Caught a key-error while searching cache: {ke}")
        return None


def cache_element(path: list[str] | str, element: Any) -> None:
    """
    Cache an element along the dict-path 'path', creating intermediate dicts as
    needed.
    """

    true_path = decode_path(path)

    depth = get_cache()
    for key in true_path[:-1]:
        if key in depth and type(depth[key]) is not dict:
            raise KeyError("Cannot create path dict in cache! A collision was detected.")

        if key not in depth:
            depth[key] = {}

        depth = depth[key]

    depth[true_path[-1]] = element


def get_cache() -> dict:
    """
    Retrieve a reference to the cache
    """
    global cache
    return cache


def get_config() -> Any:
    """
    Retrieve a reference to the config object, loading it on first access.
    """
    global config

    if config is None:
        from hypercsi.engine import load_config

        config = load_config()

    return config


def config_value(path: str, override: Any = None) -> Any:
    """
    Resolve a config value by dot-path unless the caller supplied an explicit
    override.

    Args:
        path: Dot-notated path into the config, e.g. 'unmix.eta'
        override: A caller-provided value. Returned unchanged when not None.

    Returns: The override if given, otherwise the configured value
    """

    if override is not None:
        return override

    node = get_config()
    for key in path.split("."):
        node = node[key]

    return node


def cached(path: list[str] | str) -> Callable:
    """
    A parameterized decorator that caches the decorated object under 'path'.

    For example:

    '''
    @cached("synth.pattern.iid-dirichlet")
    def iid_dirichlet(...):
        pass
    '''

    would cache the function under:

    '''
    get_cache()['synth']['pattern']['iid-dirichlet']
    '''

    Args:
       path: A list of strings or a string following dot-notation that describes
       the dict-path where the element should be stored.

    Returns: The base-level decorator
    """

    def decorate(func: Callable):
        cache_element(path, func)

        return func

    return decorate


def get_handler(kind: str, name: str) -> Callable:
    """
    Fetch a registered handler.

    Args:
        kind: The registry branch, e.g. 'synth.pattern'
        name: The handler name within the branch

    Returns: A reference to the requested handler

    Raises:
        KeyError: No handler is registered under that name
    """

    branch = from_cache(kind) or {}

    if name not in branch:
        raise KeyError(f"No handler '{name}' registered under {kind}! Available: {', '.join(sorted(branch))}")

    return branch[name]
