"""JSON-ready report sections.  Every rational is written as {"num": p, "den": q}."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import __version__
from .algebra import MatsuoAlgebra
from .errors import Underdetermined
from .flips import (Flip, ambient, check_main_theorem, classify_orbits, commutator_multiplicities,
                    fixed_and_commutator, fixed_radical_table, flip_subalgebra, induced_flip_profile,
                    oracle_multiplicities, vector_flip_type)
from .spectral import CriticalReport, Spectrum, bad_primes, critical_values, mod_p_check, spectrum
from .transposition import TranspositionSystem, connected_components, restrict


def encode(obj: Any) -> Any:
    """Replace Fractions by {"num", "den"} pairs, recursively."""
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    return obj


def decode(obj: Any) -> Any:
    """Inverse of ``encode`` on everything ``encode`` produces."""
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return Fraction(obj["num"], obj["den"])
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(v) for v in obj]
    return obj


def dumps(report: dict) -> str:
    return json.dumps(encode(report), indent=2, sort_keys=True)


def loads(text: str) -> dict:
    return decode(json.loads(text))


def header(descriptor: str, sys: TranspositionSystem) -> dict:
    comps = connected_components(sys)
    return {
        "tool": {"name": "matsuo", "version": __version__},
        "system": {"spec": descriptor, "n_points": sys.n_points, "lines": len(sys.lines),
                   "components": [len(c) for c in comps]},
    }


def spectrum_dict(spec: Spectrum) -> dict:
    return {
        "eigenvalues": [{"rho": r, "multiplicity": m} for r, m in spec.pairs],
        "valency": spec.valency,
        "minimal_polynomial": str(spec.minpoly),
        "residual": str(spec.residual) if spec.residual is not None else None,
    }


def critical_dict(report: CriticalReport) -> dict:
    def entry(e):
        return {"eta": e.eta, "rho": e.source_rho, "radical_dim": e.radical_dim}

    return {
        "entries": [entry(e) for e in report.entries],
        "excluded": [{"rho": r, "reason": why} for r, why in report.excluded],
        "vanished": [entry(e) for e in report.vanished],
    }


def spectrum_section(sys: TranspositionSystem) -> dict:
    """Spectrum and critical values, one block per connected component."""
    comps = connected_components(sys)
    blocks = []
    for comp in comps:
        sub = sys if len(comps) == 1 else restrict(sys, comp)
        spec = spectrum(sub, strict=False)
        block = {"points": len(comp), "spectrum": spectrum_dict(spec)}
        if spec.residual is None:
            block["critical"] = critical_dict(critical_values(spec))
            block["bad_primes"] = sorted(bad_primes(spec))
        if len(comps) > 1:
            block["first_point"] = comp[0]
        blocks.append(block)
    if len(blocks) == 1:
        return blocks[0]
    return {"components": blocks}


def multiplicities_dict(sol) -> dict:
    return {"method": sol.method, "values": [{"rho": r, "m": m} for r, m in sorted(sol.mults.items(), reverse=True)]}


def flip_section(sys: TranspositionSystem, flip: Flip, eta: Fraction | None = None,
                 symplectic_m: int | None = None) -> dict:
    """Orbit data, multiplicities, radical table and direct checks for one flip."""
    orb = classify_orbits(sys, flip)
    fixed, skew = fixed_and_commutator(sys, flip)
    spec = spectrum(sys)
    out: dict[str, Any] = {
        "order": flip.order,
        "orbits": orb.counts,
        "dims": {"fixed": fixed.dim, "commutator": skew.dim},
    }
    oracle = oracle_multiplicities(sys, flip, spec)
    mult = {"oracle": multiplicities_dict(oracle)}
    try:
        solved = commutator_multiplicities(sys, flip, spec)
        mult["solved"] = multiplicities_dict(solved)
        mult["agree"] = solved.same_values(oracle)
    except Underdetermined as exc:
        mult["solved"] = None
        mult["unsupported"] = str(exc)
    out["multiplicities"] = mult

    amb = ambient(sys, flip) if orb.singles or orb.doubles else None
    if amb is None:
        out["ambient"] = None
        return out
    out["ambient"] = {"points": len(amb.points), "proper": amb.is_proper, "equals_seed": amb.seed_closed,
                      "components": [len(c) for c in connected_components(amb.system)]}
    if symplectic_m is not None and vector_flip_type(symplectic_m, flip) == (1, symplectic_m):
        prof = induced_flip_profile(symplectic_m, flip)
        out["ambient_chain"] = {
            "e_vector": format(prof.e_vector, f"0{2 * symplectic_m}b"),
            "seed_points": prof.seed_points, "ambient_points": prof.ambient_points,
            "component_sizes": prof.component_sizes, "reduced_points": prof.reduced_points,
            "tau_h": prof.h, "quotient_points": prof.quotient_points,
            "induced_type": prof.induced_type, "induced_rank": prof.induced_rank,
        }
    try:
        table = fixed_radical_table(amb.system, amb.flip)
        out["radical_table"] = critical_dict(table)
        etas = [e.eta for e in table.entries + table.vanished]
    except Underdetermined as exc:
        out["radical_table"] = None
        out["radical_table_unsupported"] = str(exc)
        etas = [e.eta for e in critical_values(amb.system).entries]
    if eta is not None and eta not in etas:
        etas.append(eta)
    out["direct"] = [direct_check(sys, flip, x) for x in sorted(etas)]
    return out


def direct_check(sys: TranspositionSystem, flip: Flip, eta: Fraction) -> dict:
    """Gram-oracle radical of A and the main theorem at one eta."""
    M = MatsuoAlgebra(sys, eta)
    sub = flip_subalgebra(M, flip)
    thm = check_main_theorem(M, flip)
    return {"eta": eta, "dim_A": sub.A.dim, "equals_fixed": sub.equals_fixed,
            "equals_ambient_fixed": sub.equals_ambient_fixed, "contains_extras": sub.contains_extras,
            "radical_A": thm.radical_A, "main_theorem": thm.holds}


def modp_section(sys: TranspositionSystem, eta: Fraction, p: int) -> dict:
    spec = spectrum(sys)
    rep = mod_p_check(sys, eta, p, spec)
    return {"p": p, "eta": eta, "good_prime": rep.good_prime, "semisimple_mod_p": rep.semisimple,
            "radical_dim_p": rep.radical_dim_p, "radical_dim_0": rep.radical_dim_0,
            "matches_char0": rep.matches_char0,
            "status": "ok" if rep.good_prime else "UNSUPPORTED"}
