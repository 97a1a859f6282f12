"""Cyclic-group degeneration of the automorphism protocol.

Run the same key/encrypt/decrypt flow with G the additive group Z_p and
automorphisms x -> k*x.  The generator image of such a map IS the scalar
k, so public data collapses to (k mod p, k^m mod p) and the scheme is
literally textbook ElGamal over the multiplicative group of F_p: the
fixture below exposes both flows so tests can check they produce
identical values step for step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import is_probable_prime

__all__ = [
    "ScalarMorKey",
    "scalar_mor_keygen",
    "scalar_mor_encrypt",
    "scalar_mor_decrypt",
    "elgamal_keygen",
    "elgamal_encrypt",
    "elgamal_decrypt",
]


@dataclass(frozen=True)
class ScalarMorKey:
    p: int
    k: int       # public: the automorphism x -> k*x on Z_p
    k_m: int     # public: the automorphism phi^m, i.e. x -> k^m * x
    m: int       # private exponent


def scalar_mor_keygen(p: int, rng) -> ScalarMorKey:
    if not is_probable_prime(p):
        raise ValueError("modulus must be prime")
    k = rng.randrange(2, p - 1)
    m = rng.randrange(2, p - 1)
    return ScalarMorKey(p, k, pow(k, m, p), m)


def scalar_mor_encrypt(key: ScalarMorKey, a: int, rng) -> tuple[int, int]:
    """Ciphertext (phi^r presented by k^r, phi^{mr}(a) = a * k^{mr})."""
    p = key.p
    if not 1 <= a < p:
        raise ValueError("plaintext must be a nonzero residue")
    r = rng.randrange(2, p - 1)
    return pow(key.k, r, p), a * pow(key.k_m, r, p) % p


def scalar_mor_decrypt(key: ScalarMorKey, ct: tuple[int, int]) -> int:
    k_r, payload = ct
    k_mr = pow(k_r, key.m, key.p)
    return payload * pow(k_mr, -1, key.p) % key.p


# -- textbook reference: same wire values, classic notation ------------------


def elgamal_keygen(p: int, alpha: int, rng) -> tuple[tuple[int, int, int], int]:
    """Public (p, alpha, beta = alpha^x), private x."""
    x = rng.randrange(2, p - 1)
    return (p, alpha, pow(alpha, x, p)), x


def elgamal_encrypt(pub: tuple[int, int, int], msg: int, rng) -> tuple[int, int]:
    p, alpha, beta = pub
    y = rng.randrange(2, p - 1)
    return pow(alpha, y, p), msg * pow(beta, y, p) % p


def elgamal_decrypt(p: int, x: int, ct: tuple[int, int]) -> int:
    c1, c2 = ct
    return c2 * pow(pow(c1, x, p), -1, p) % p
