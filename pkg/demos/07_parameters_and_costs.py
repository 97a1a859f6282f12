#!/usr/bin/env python3
"""Parameter analysis and the field-multiplication cost model.

The validator reports the discrete-log target field GF(q^(d^2)), an
index-calculus cost estimate, the generic square-root cost, and whether
the index-calculus regime is exponential (d > log2 q).  The bench
measures actual multiplication counts for composing two automorphisms
against the worst-case bound (p-1)*gamma*d^4 + d^4 and the realistic
estimate d^2 + (gamma/2)*d^2.5.
"""

import random

from morsl import field_spec, validate_params
from morsl.bench import (
    composition_cost_report,
    format_composition_report,
    format_word_stats,
    word_length_stats,
)

# The headline configuration: degree 7 over GF(2^160) pushes the
# discrete log into GF(2^7840).
print(validate_params(7, field_spec(2, 160)).table())
print()

# A desk-scale configuration for contrast (warnings included).
print(validate_params(3, field_spec(5)).table())
print()

rng = random.Random(6)
spec = field_spec(2, 4)
print(format_composition_report(composition_cost_report(spec, 3, rng)))
print()
print(format_word_stats(word_length_stats(spec, 3, 300, rng)))
