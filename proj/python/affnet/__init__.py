"""Discrete affine invariants of asymptotic nets.

Thin re-export of the compiled module; vertex arrays are numpy arrays of
shape (nu+1, nv+1, 3) indexed [u, v].
"""

try:  # installed wheel: extension lives inside the package
    from ._affnet import (
        AffnetError,
        build_structure,
        classify,
        extract_reconstruct,
        hyperboloid_net,
        load_net,
        minimal_net,
        paraboloid_net,
        planarity,
        quad_M,
        save_net,
        verify,
    )
except ImportError:  # in-tree runs: extension on sys.path next to the build
    from _affnet import (
        AffnetError,
        build_structure,
        classify,
        extract_reconstruct,
        hyperboloid_net,
        load_net,
        minimal_net,
        paraboloid_net,
        planarity,
        quad_M,
        save_net,
        verify,
    )

__all__ = [
    "AffnetError",
    "build_structure",
    "classify",
    "extract_reconstruct",
    "hyperboloid_net",
    "load_net",
    "minimal_net",
    "paraboloid_net",
    "planarity",
    "quad_M",
    "save_net",
    "verify",
]
