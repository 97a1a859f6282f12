#!/usr/bin/env python3
"""Why keys must not be monomial: the cycle attack in action.

Conjugation by a diagonal-times-permutation matrix moves each generator
1 + e_{i,j} to a single twisted transvection, so the permutation is
readable straight off the public images.  Its order is tiny, positions
leak the exponent modulo that order, and coefficient products along the
orbits leave only discrete logs in the base field GF(q).
"""

import random

from morsl import (
    Automorphism,
    MorParams,
    MorPublicKey,
    Permutation,
    diagonal_matrix,
    field_spec,
    mat_mul,
    mat_pow,
    monomial_cycle_attack,
    permutation_matrix,
)

spec = field_spec(7)
d = 5
rng = random.Random(4)

secret_m = 4321
w = [spec.random_nonzero(rng) for _ in range(d)]
# a permutation with mixed cycle structure: short orbits on pairs keep
# the cycle products nontrivial, so the coefficient DLPs refine m
alpha = Permutation([2, 3, 1, 5, 4])
conj = mat_mul(diagonal_matrix(w), permutation_matrix(spec, alpha))

pk = MorPublicKey(
    MorParams(spec, d, require_irreducible_lift=False),
    Automorphism.from_conjugator(conj),
    Automorphism.from_conjugator(mat_pow(conj, secret_m)),
)

report = monomial_cycle_attack(pk)
print("read permutation:", list(report.beta.images), "of order", report.nu)
print("secret m mod", report.nu, "=", report.shift, "(true:", secret_m % report.nu, ")")
print("orbit lengths:", [len(o) for o in report.orbits])
print("field DLP instances solved:", len(report.dlp_instances))
print("residue set modulo", report.modulus, ":", list(report.residues))
print("true residue recovered:", secret_m % report.modulus in report.residues)
