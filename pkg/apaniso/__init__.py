# -*- coding: utf-8 -*-
"""
@file
@brief Module *apaniso*.
Asymptotic-preserving solvers for degenerate anisotropic
elliptic problems and for the Euler-Lorentz system
in the drift limit.
"""
__version__ = "0.1.0"
__author__ = "apaniso developers"
__license__ = "MIT License"


def check(log=False):
    """
    Checks the library is working.
    It raises an exception.

    @param      log     if True, display information, otherwise
    @return             0 or exception
    """
    from .harness.manufactured import quadratic_inhomogeneous
    from .elliptic import solve
    from .mesh import build_mesh
    mesh = build_mesh(0, 1, 0, 1, 4, 4)
    prob, exact = quadratic_inhomogeneous(1., mesh, "oblique")
    sol = solve(prob)
    err = abs(sol.phi.values - exact.values).max()
    if log:  # pragma: no cover
        print("[check] error={}".format(err))
    if err > 1e-8:
        raise RuntimeError(  # pragma: no cover
            "Unexpected error {}".format(err))
    return True


def _setup_hook(use_print=False):
    """
    if this function is added to the module,
    the help automation and unit tests call it first before
    anything goes on as an initialization step.
    """
    if use_print:  # pragma: no cover
        print("Success: _setup_hook")  # pragma: no cover
