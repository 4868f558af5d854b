"""Finite relations, relative Frobenius and H*-algebras, weak monoids,
linear symplectic relations, relational groupoids and polynomial Poisson
bivectors, all with exact arithmetic and explicit witnesses."""

from . import finrel, frobenius, hstar, linalg, monoids, poisson, relgpd, symplin

__version__ = "0.1.0"

__all__ = ["finrel", "frobenius", "hstar", "linalg", "monoids", "poisson", "relgpd", "symplin"]
