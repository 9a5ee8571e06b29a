"""Torus weights on the tangent space of projective space at a fixed line.

Given the weight decomposition of a linear torus action on V and a chosen
weight vector v, the tangent space of P(V) at [v] carries the weights
``lambda_i - lambda_chosen``, with the chosen block contributing
``dim(V_chosen) - 1`` copies of zero.  The closed formula is cross-checked
against an explicit affine-chart computation.
"""

from __future__ import annotations

from typing import Sequence

Character = tuple  # integer vector
WeightDatum = tuple  # (Character, multiplicity)


def _validate(weights: Sequence[WeightDatum], chosen: int) -> None:
    if not weights:
        raise ValueError("empty weight list")
    if not 0 <= chosen < len(weights):
        raise ValueError("chosen index out of range")
    chars = [tuple(c) for c, _ in weights]
    if len(set(chars)) != len(chars):
        raise ValueError("weight characters must be distinct")
    if any(m < 1 for _, m in weights):
        raise ValueError("multiplicities must be positive")


def ptangent_weights(
    weights: Sequence[WeightDatum], chosen: int
) -> dict[Character, int]:
    """Tangent weights at the chosen line, zero-multiplicity entries dropped."""
    _validate(weights, chosen)
    base_char, base_mult = tuple(weights[chosen][0]), weights[chosen][1]
    out: dict[Character, int] = {}
    zero = tuple(0 for _ in base_char)
    if base_mult - 1 > 0:
        out[zero] = base_mult - 1
    for i, (char, mult) in enumerate(weights):
        if i == chosen:
            continue
        diff = tuple(a - b for a, b in zip(char, base_char))
        out[diff] = out.get(diff, 0) + mult
    return out


def affine_chart_weights(
    weights: Sequence[WeightDatum], chosen: int
) -> dict[Character, int]:
    """Independent oracle via the affine chart around the chosen line.

    The basis of V is flattened with multiplicity and the chart at [v] is
    coordinatized by the ratios (other coordinate) / (chosen coordinate).
    Acting by the torus scales coordinate j by its character and the chart is
    renormalized by the chosen character, so the ratio coordinate j picks up
    the character difference; dualizing the cotangent weights gives the
    tangent weights.  All bookkeeping is done on the flattened basis.
    """
    _validate(weights, chosen)
    flat: list[Character] = []
    chosen_flat = None
    for i, (char, mult) in enumerate(weights):
        for copy in range(mult):
            if i == chosen and copy == 0:
                chosen_flat = len(flat)
            flat.append(tuple(char))
    assert chosen_flat is not None
    norm = flat[chosen_flat]
    out: dict[Character, int] = {}
    for j, char in enumerate(flat):
        if j == chosen_flat:
            continue
        # dual coordinate S_j has character -char; the chart ratio S_j/S_chosen
        # has character -char + norm; the tangent space is the dual of m/m^2.
        cotangent = tuple(-a + b for a, b in zip(char, norm))
        tangent = tuple(-c for c in cotangent)
        out[tangent] = out.get(tangent, 0) + 1
    return out
