"""Command line front end: classify, verify, invariants, export.

Exit codes are a stable contract: 0 success, 1 invalid input, 2 a verified
mismatch against a predicted value (a finding, not a crash), 3 a cap was
exceeded, 4 an I/O failure.  JSON output is sorted and timestamp-free so that
identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys as _sys
from pathlib import Path

import numpy as np

from . import __version__
from .intmat import alternating_type, format_matrix_text, int_eye, is_alternating
from .gf2 import F2Span, f2_nullspace
from .lattice import (SpectralLatticeSystem, SpectralParams, boundary_pairs_to_zero,
                      build_system, cycle_class, expected_polarization, gram_mod2,
                      mod2_nullspace_check, prym_rank, sp_generators_mod2,
                      system_to_json_dict)
from .quadratic import ABSENT, predicted_arf, solve_invariant_quadratic
from .vanlat import (CapExceeded, NOT_APPLICABLE, O_SHARP_0, O_SHARP_1, SP_SHARP,
                     A_PRIME, apply_transvection_z, classify, delta_membership_z,
                     expected_descriptor, gl_generators, orbit_closure_f2,
                     orthogonal_delta_set, transvection_matrix, verify_axioms)
from .exterior import invariant_subspace, monodromy_invariant_subspace, gram_bivector, \
    bivector_power, is_proportional

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2
EXIT_CAP = 3
EXIT_IO = 4


def _envelope(args, command: str) -> dict:
    return {
        "tool": "specmono",
        "version": __version__,
        "command": command,
        "caps": {"orbit_cap": args.orbit_cap, "k_max": args.k_max},
        "seed": args.seed,
    }


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
        return
    for k in sorted(payload):
        v = payload[k]
        if isinstance(v, dict):
            for k2 in sorted(v):
                print(f"{k}.{k2:<38} {v[k2]}")
        else:
            print(f"{k:<40} {v}")


def _params(args) -> SpectralParams:
    if args.n is None or args.l is None or args.g is None:
        raise ValueError("--n, --l and --g are required")
    return SpectralParams(args.n, args.l, args.g)


def cmd_classify(args) -> int:
    try:
        params = _params(args)
    except ValueError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INVALID
    try:
        result = classify(params.n, params.l, params.g,
                          orbit_cap=args.orbit_cap, k_max=args.k_max)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=_sys.stderr)
        return EXIT_CAP
    expected = expected_descriptor(params.n, params.l, params.g)
    match = result.descriptor == expected and result.all_checks_pass
    payload = _envelope(args, "classify")
    payload.update({
        "params": {"n": params.n, "l": params.l, "g": params.g},
        "descriptor": result.descriptor.to_json_dict(),
        "expected": expected.to_json_dict(),
        "mu": result.mu,
        "delta_size": result.delta_size,
        "e6": result.e6,
        "checks": dict(sorted(result.checks.items())),
        "match": match,
    })
    _emit(payload, args.json)
    return EXIT_OK if match else EXIT_MISMATCH


def _gl_checks(sys: SpectralLatticeSystem, rng: random.Random,
               full_limit: int = 40) -> tuple[bool, str]:
    gram = sys.lattice_s.gram
    push = sys.pushforward
    gens = list(range(len(sys.sp_generators)))
    if sys.lattice_s.rank > full_limit:
        sample = sorted(rng.sample(gens, min(8, len(gens))))
        info = f"gram preservation on sampled generators {sample}"
    else:
        sample = gens
        info = "gram preservation on all generators"
    ok = True
    for idx in gens:
        t = transvection_matrix(gram, sys.embed_p_in_s @ sys.sp_generators[idx])
        if not np.array_equal(push @ t, push):
            ok = False
            break
        if idx in sample and not np.array_equal(t.T @ gram @ t, gram):
            ok = False
            break
    return ok, info


def run_verification(params: SpectralParams, seed: int = 0, orbit: bool = False,
                     orbit_cap: int = 24, k_max: int = 8):
    """Named invariant checks for one parameter triple.

    Returns (checks, extras): checks is a list of (name, ok, info) and extras
    carries computed quantities for the report.  Raises CapExceeded when an
    orbit enumeration was requested beyond the cap.
    """
    n, l, g = params.n, params.l, params.g
    k = params.k
    rng = random.Random(seed)
    sys = build_system(params)
    checks: list[tuple[str, bool, str]] = []
    extras: dict = {"mu": sys.lattice_p.rank, "delta_size": None}

    lat = [sys.lattice_s0, sys.lattice_p1, sys.lattice_p, sys.lattice_s]
    checks.append(("gram_alternating", all(is_alternating(x.gram) for x in lat), ""))

    genus_cover = (k * (n - 1) - n * (2 - 2 * g) + 2) // 2
    ranks_ok = (sys.lattice_p.rank == prym_rank(n, l, g)
                and sys.lattice_s0.rank == (n - 1) * (k - 2)
                and sys.lattice_p1.rank == 2 * g * (n - 1)
                and sys.lattice_s.rank - sys.lattice_p.rank == 2 * g
                and sys.lattice_s.rank == 2 * genus_cover)
    checks.append(("rank_formulas", ranks_ok, f"mu={sys.lattice_p.rank}"))

    def t_ok(t, gram):
        power = int_eye(t.shape[0])
        for _ in range(n):
            power = t @ power
        return (np.array_equal(power, int_eye(t.shape[0]))
                and np.array_equal(t.T @ gram @ t, gram))

    checks.append(("t_order_and_gram", t_ok(sys.t_on_p, sys.lattice_p.gram)
                   and t_ok(sys.t_on_s, sys.lattice_s.gram), ""))
    checks.append(("boundary_orthogonality", boundary_pairs_to_zero(n, k), ""))

    push_pull = np.array_equal(sys.pushforward @ sys.pullback, n * int_eye(2 * g))
    push_embed = not np.any(sys.pushforward @ sys.embed_p_in_s)
    checks.append(("pushforward_pullback", push_pull and push_embed, ""))

    kernel_ok = all(not np.any(sys.pushforward @ (sys.embed_p_in_s @ gen))
                    for gen in sys.sp_generators)
    checks.append(("sp_generators_in_kernel", kernel_ok, f"count={len(sys.sp_generators)}"))

    embed_ok = (np.array_equal(sys.embed_p_in_s.T @ sys.lattice_s.gram @ sys.embed_p_in_s,
                               sys.lattice_p.gram)
                and np.array_equal(sys.embed_p_in_s @ sys.t_on_p,
                                   sys.t_on_s @ sys.embed_p_in_s))
    checks.append(("embedding_compatible", embed_ok, ""))

    divisors, nullity = alternating_type(sys.lattice_p.gram)
    expected_div = expected_polarization(n, l, g)
    checks.append(("polarization_type", (divisors, nullity) == expected_div,
                   f"divisors={list(divisors)}, p={nullity}"))

    checks.append(("mod2_radical", mod2_nullspace_check(sys).ok, ""))

    form = gram_mod2(sys.lattice_p)
    sbar = sp_generators_mod2(sys)
    q = solve_invariant_quadratic(form, sbar)
    predicted = predicted_arf(n, l)
    if q is None:
        arf_ok = predicted == ABSENT
        info = "no invariant quadratic"
    else:
        from .quadratic import arf as arf_of
        radical = f2_nullspace(form)
        vanishes = all(q(z) == 0 for z in radical)
        value = arf_of(q) if vanishes else "undefined"
        arf_ok = vanishes and value == predicted
        info = f"arf={value}, predicted={predicted}"
    checks.append(("arf_vs_predicted", arf_ok, info))

    gl_ok, gl_info = _gl_checks(sys, rng)
    checks.append(("gl_compatibility", gl_ok, gl_info))

    result = classify(n, l, g, orbit_cap=orbit_cap, k_max=k_max)
    oracle = result.mod2_oracle() if (result.descriptor.family != A_PRIME
                                      or result.delta_set is not None) else None
    if oracle is not None:
        c1 = cycle_class(sys, 1, 0)
        words_ok = True
        gens = sys.sp_generators
        for _ in range(20):
            x = c1.copy()
            for _ in range(rng.randint(1, 20)):
                x = apply_transvection_z(sys.lattice_p.gram, gens[rng.randrange(len(gens))], x)
            if not delta_membership_z(sys, x, oracle):
                words_ok = False
                break
        doubled_fails = not delta_membership_z(sys, 2 * c1, oracle)
        checks.append(("integral_membership", words_ok and doubled_fails, "20 random words"))

    if orbit:
        orb = orbit_closure_f2(form, sbar, cap=orbit_cap)
        extras["delta_size"] = orb.size
        axioms = verify_axioms(form, orb.delta, orbit_generators=sbar)
        checks.append(("orbit_axioms", axioms.ok, f"size={orb.size}"))
        family = result.descriptor.family
        if family in (O_SHARP_0, O_SHARP_1):
            predicted_set = orthogonal_delta_set(q, cap=orbit_cap)
            checks.append(("orbit_matches_prediction", orb.delta == frozenset(predicted_set),
                           f"size={orb.size}"))
        elif family == SP_SHARP:
            radical = f2_nullspace(form)
            rad = set(F2Span(radical).enumerate()) if radical else {0}
            predicted_set = {x for x in range(1 << form.nrows) if x not in rad}
            checks.append(("orbit_matches_prediction", orb.delta == predicted_set,
                           f"size={orb.size}"))
        else:
            checks.append(("orbit_matches_prediction",
                           result.checks.get("special_family_invariants", False),
                           "special family invariant tuple"))
    checks.append(("classification", result.descriptor == expected_descriptor(n, l, g)
                   and result.all_checks_pass, result.descriptor.family))
    return checks, extras


def cmd_verify(args) -> int:
    try:
        params = _params(args)
    except ValueError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INVALID
    try:
        checks, extras = run_verification(params, seed=args.seed, orbit=args.orbit,
                                          orbit_cap=args.orbit_cap, k_max=args.k_max)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=_sys.stderr)
        return EXIT_CAP
    payload = _envelope(args, "verify")
    payload.update({
        "params": {"n": params.n, "l": params.l, "g": params.g},
        "mu": extras["mu"],
        "delta_size": extras["delta_size"],
        "checks": {name: {"pass": ok, "info": info} for name, ok, info in checks},
        "all_pass": all(ok for _, ok, _ in checks),
    })
    if args.json:
        _emit(payload, True)
    else:
        for name, ok, info in checks:
            mark = "PASS" if ok else "FAIL"
            print(f"[{mark}] {name:<28} {info}")
        print(f"mu={extras['mu']} delta_size={extras['delta_size']}")
    return EXIT_OK if payload["all_pass"] else EXIT_MISMATCH


def cmd_invariants(args) -> int:
    payload = _envelope(args, "invariants")
    try:
        if args.sp is not None:
            if args.p is None:
                raise ValueError("--p is required")
            v = args.sp
            ks = [args.k] if args.k is not None else list(range(0, 2 * v + 1))
            entries = []
            for k in ks:
                basis = invariant_subspace(args.p, v, k)
                entry = {"k": k, "dim_fixed": len(basis)}
                if len(basis) == 1:
                    entry["generator"] = f"alpha_{k}-proportional"
                entries.append(entry)
            payload.update({"mode": "sp", "p": args.p, "v": v,
                            "dims": [e["dim_fixed"] for e in entries], "entries": entries})
        else:
            params = _params(args)
            if args.p is None:
                raise ValueError("--p is required")
            if args.p < 3 or params.n % args.p == 0:
                raise ValueError("p must be an odd prime not dividing n")
            sys_ = build_system(params)
            mu = sys_.lattice_p.rank
            if args.k is not None:
                ks = [args.k]
            else:
                ks = list(range(0, min(mu, args.k_max) + 1))
            entries = []
            for k in ks:
                basis = monodromy_invariant_subspace(sys_, args.p, k)
                entry = {"k": k, "dim_fixed": len(basis)}
                if len(basis) == 1 and k % 2 == 0 and k > 0:
                    biv = gram_bivector(sys_.lattice_p.gram, args.p)
                    power = bivector_power(biv, k // 2)
                    if is_proportional(basis[0], power.coeffs, args.p):
                        entry["generator"] = f"gram-form-power-{k // 2}"
                entries.append(entry)
            payload.update({"mode": "monodromy", "p": args.p,
                            "params": {"n": params.n, "l": params.l, "g": params.g},
                            "dims": [e["dim_fixed"] for e in entries], "entries": entries})
    except ValueError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INVALID
    _emit(payload, args.json)
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        params = _params(args)
    except ValueError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INVALID
    if args.out is None:
        print("error: --out directory is required", file=_sys.stderr)
        return EXIT_INVALID
    sys_ = build_system(params)
    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        doc = system_to_json_dict(sys_)
        (out / "system.json").write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        for name, lattice in (("gram_s0", sys_.lattice_s0), ("gram_p1", sys_.lattice_p1),
                              ("gram_p", sys_.lattice_p), ("gram_s", sys_.lattice_s)):
            (out / f"{name}.txt").write_text(format_matrix_text(lattice.gram))
    except OSError as exc:
        print(f"i/o error: {exc}", file=_sys.stderr)
        return EXIT_IO
    payload = _envelope(args, "export")
    payload.update({"params": {"n": params.n, "l": params.l, "g": params.g},
                    "out": str(out), "files": sorted(p.name for p in out.iterdir())})
    _emit(payload, args.json)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specmono",
                                     description="cyclic spectral cover lattices and "
                                                 "their transvection monodromy")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int)
        p.add_argument("--l", type=int)
        p.add_argument("--g", type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--orbit-cap", type=int, default=24, dest="orbit_cap")
        p.add_argument("--k-max", type=int, default=8, dest="k_max")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", action="store_true")
        p.add_argument("--out", type=str)

    p_classify = sub.add_parser("classify", help="classify the vanishing lattice")
    common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="run the invariant checks")
    common(p_verify)
    p_verify.add_argument("--orbit", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_inv = sub.add_parser("invariants", help="fixed subspaces of exterior powers")
    common(p_inv)
    p_inv.add_argument("--sp", type=int, help="pure symplectic mode: half-dimension v")
    p_inv.set_defaults(func=cmd_invariants)

    p_export = sub.add_parser("export", help="write system JSON and Gram matrices")
    common(p_export)
    p_export.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else 0
    return args.func(args)


def entry() -> None:
    _sys.exit(main())
