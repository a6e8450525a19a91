"""End-to-end analysis: from a parsed problem to the report document."""

from __future__ import annotations

from fractions import Fraction

from .errors import (InsufficientTruncation, InternalInconsistency,
                     SpecrigError)
from .germs import GermData, delta_identity_holds
from .localmod import (build_local, check_assumption, delta_end,
                       discriminant_identity_holds, hor_dim, irr_end,
                       irregularity, reduction_cross_check)
from .matrf import charpoly, validate_poles
from .parsing import ProblemSpec
from .ratfn import INFINITY
from .rigidity import (CurveClass, arithmetic_genus, cohomology_dims,
                       euler_char_normalization, irreducibility_status,
                       rigidity_index, smoothness_check_finite_part,
                       total_inf_intersection, verify_milnor_per_pole)


class AssumptionFailure(SpecrigError):
    """Carries the per-pole violation diagnostic."""

    def __init__(self, pole, detail):
        super().__init__(f"assumption violation at pole {pole}: {detail}")
        self.pole = pole
        self.detail = detail


def _pole_str(p):
    return "inf" if p == INFINITY else str(Fraction(p))


def run_analysis(spec: ProblemSpec, truncation=None,
                 assume_irreducible_curve=False,
                 assert_irreducible_connection=False,
                 check_reduction=False):
    """Full pipeline; returns (document dict, exit code 0 or 1).

    Analysis errors (assumption violations, unsupported input, exhausted
    truncation) raise; the CLI maps them to exit code 2.
    """
    a_mat = spec.matrix
    warnings = list(validate_poles(a_mat, spec.poles))
    cp = charpoly(a_mat)
    locals_ = []
    germs = []
    for pole in spec.poles:
        nterms = truncation
        last = None
        for _ in range(4):
            local = build_local(a_mat, pole, nterms=nterms, cp=cp)
            if not check_assumption(local):
                raise AssumptionFailure(_pole_str(pole), local.violation)
            if not discriminant_identity_holds(local):
                raise InternalInconsistency(
                    f"discriminant valuation identity fails at pole "
                    f"{_pole_str(pole)}")
            if check_reduction and local.mode == "multiplicity-free":
                reduction_cross_check(local)
            try:
                germ = GermData(local)
            except InsufficientTruncation as exc:
                last = exc
                nterms = 2 * local.nterms
                continue
            break
        else:
            raise last
        if local.nu == 0:
            # declared point is not actually a pole; validate_poles has
            # already warned, and there is no germ at infinity to analyze
            continue
        locals_.append(local)
        germs.append(germ)
        hor_dim(local)  # records resonance warnings for regular cells
        warnings.extend(local.warnings)
    n = a_mat.n
    b = total_inf_intersection(germs)
    curve = CurveClass(n, b, spec.genus)
    g_a = arithmetic_genus(curve)
    delta_sum = sum(g.delta for g in germs)
    rig = rigidity_index(locals_, spec.genus)
    smooth_status, smooth_detail = smoothness_check_finite_part(
        cp, spec.poles)
    irred = irreducibility_status(cp, locals_)
    if irred == "unknown" and assume_irreducible_curve:
        irred = "assumed-irreducible"
    resonant = any("resonant" in w for w in warnings)
    # chi by the genus-delta formula; it equals the Euler characteristic
    # of the normalization when the curve is irreducible and smooth away
    # from the infinity divisor (the main-theorem hypotheses below)
    chi = euler_char_normalization(g_a, germs)
    if irred == "reducible":
        main = "not-applicable: spectral curve is reducible"
    elif irred == "unknown":
        main = "not-applicable: curve irreducibility undecided (use " \
               "--assume-irreducible-curve to assert it)"
    elif smooth_status != "ok":
        main = f"not-applicable: finite-part smoothness {smooth_status}" \
               + (f" ({smooth_detail})" if smooth_detail else "")
    elif resonant:
        main = "not-applicable: resonance warning makes the horizontal " \
               "dimension unverified"
    else:
        main = "true" if rig == chi else "false"
    failed = main == "false"
    pole_blocks = []
    for local, germ in zip(locals_, germs):
        milnor_ok = verify_milnor_per_pole(local, germ)
        delta_ok = delta_identity_holds(germ)
        if not (milnor_ok and delta_ok):
            failed = True
        pole_blocks.append({
            "point": _pole_str(local.pole),
            "nu": local.nu,
            "mode": local.mode,
            "m": local.m,
            "cells": [{"p": c.p, "r": c.r} for c in local.cells],
            "irregularity": irregularity(local),
            "irr_end": irr_end(local),
            "delta_end": delta_end(local),
            "r_c": germ.r_c,
            "mu": germ.mu,
            "mu_oracle": germ.mu_oracle_value,
            "delta": germ.delta,
            "inf_intersection": germ.local_inf,
            "verdicts": {"milnor": milnor_ok, "delta_identity": delta_ok},
        })
    doc = {
        "schema_version": "1",
        "input": {
            "variable": spec.variable,
            "rank": n,
            "genus": spec.genus,
            "poles": [_pole_str(p) for p in spec.poles],
            "matrix": spec.entries,
        },
        "poles": pole_blocks,
        "global": {
            "n": n,
            "b": b,
            "g_a": g_a,
            "delta_sum": delta_sum,
            "chi": chi,
            "rig": rig,
            "irreducibility": irred,
            "smoothness": smooth_status
            if smooth_detail is None else f"{smooth_status}: "
                                          f"{smooth_detail}",
            "main_theorem": main,
        },
        "warnings": warnings,
    }
    if assert_irreducible_connection:
        h0, h1, h2 = cohomology_dims(rig)
        doc["global"]["h_dims"] = [h0, h1, h2]
        if h1 < 0:
            doc["warnings"].append(
                "h^1 = 2 - rig is negative: the connection is unlikely "
                "to be irreducible as asserted")
    return doc, (1 if failed else 0)
