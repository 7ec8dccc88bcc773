"""The extraspecial multiplication law on pairs (i, u) with i in F_p and u in F_p^n."""

from __future__ import annotations

from typing import Sequence


def bilinear(p: int, omega: Sequence[Sequence[int]], u: Sequence[int], v: Sequence[int]) -> int:
    """u^T omega v mod p."""
    return sum(u[a] * omega[a][b] * v[b] for a in range(len(u)) for b in range(len(v))) % p


def extraspecial_multiply(p: int, omega, x: tuple[int, Sequence[int]], y: tuple[int, Sequence[int]]):
    """(z^i t^u)(z^j t^v) = z^(i+j+omega(u,v)) t^(u+v)."""
    i, u = x
    j, v = y
    if len(u) != len(v) or len(u) != len(omega):
        raise ValueError("vectors and form have mismatched dimensions")
    k = (i + j + bilinear(p, omega, u, v)) % p
    return k, tuple((a + b) % p for a, b in zip(u, v))


def extraspecial_inverse(p: int, omega, x: tuple[int, Sequence[int]]):
    """z^(-i+omega(u,u)) t^(-u) is the two-sided inverse of z^i t^u."""
    i, u = x
    return (-i + bilinear(p, omega, u, u)) % p, tuple((-a) % p for a in u)


def extraspecial_power(p: int, omega, x, k: int):
    n = len(x[1])
    out = (0, (0,) * n)
    for _ in range(k):
        out = extraspecial_multiply(p, omega, out, x)
    return out
