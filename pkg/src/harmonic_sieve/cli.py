"""Command-line front end: group construction, character tables, harmonic
reports, measurement runs, invariant audits, and sweeps.

Group specs use a small DSL: Z:n, D:n, S:n, Z2^n, prod(a,b), and
perm[(1 2)(3 4), (1 3)] with 1-based cycle notation.  JSON is the
canonical output (floats at 12 significant digits); CSV is a lossy
projection for sweeps.  Exit codes: 0 success, 1 check failure, 2
usage/parse error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import multiregister as mr
from .characters import CharacterTable, character_table
from .errors import (
    GroupSpecError,
    HarmonicSieveError,
    ResourceLimitError,
    UnsupportedFamilyError,
)
from .groups import (
    Cyclic,
    Dihedral,
    DirectProduct,
    ElementaryAbelian2,
    GroupSpec,
    GroupTable,
    PermGens,
    SubgroupHandle,
    Symmetric,
    all_subgroups,
    build_group,
    subgroup_closure,
)
from .harmonics import HarmonicReport, find_missing_harmonics
from .kickback import (
    build_kickback,
    diagonal_projector,
    outcome_probability,
    verify_intertwining,
)
from .representations import irrep_matrices, rank_of_projector, regular_representation, subgroup_average

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


# ---------------------------------------------------------------------------
# group-spec DSL


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_perm_gens(body: str) -> PermGens:
    gens = []
    cycle_lists = []
    for token in _split_top_level(body):
        token = token.strip()
        if not token:
            raise GroupSpecError("empty permutation in perm[...]")
        cycles = []
        consumed = 0
        for m in _CYCLE_RE.finditer(token):
            consumed += len(re.sub(r"\s+", "", m.group(0)))
            points = [p for p in re.split(r"[,\s]+", m.group(1).strip()) if p]
            try:
                cycle = [int(p) - 1 for p in points]
            except ValueError:
                raise GroupSpecError(f"bad cycle {m.group(0)!r}") from None
            if any(p < 0 for p in cycle) or len(set(cycle)) != len(cycle):
                raise GroupSpecError(f"bad cycle {m.group(0)!r}")
            cycles.append(cycle)
        if consumed != len(re.sub(r"\s+", "", token)) and token != "()":
            raise GroupSpecError(f"unparsed permutation text in {token!r}")
        cycle_lists.append(cycles)
    domain = 0
    for cycles in cycle_lists:
        for cycle in cycles:
            domain = max(domain, max(cycle, default=-1) + 1)
    domain = max(domain, 1)
    for cycles in cycle_lists:
        perm = list(range(domain))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                perm[a] = b
        gens.append(tuple(perm))
    return PermGens(perms=tuple(gens))


def parse_group_spec(text: str) -> GroupSpec:
    """Parse the group DSL: Z:n, D:n, S:n, Z2^n, prod(a,b), perm[...]."""
    s = text.strip()
    if not s:
        raise GroupSpecError("empty group spec")
    if s.startswith("prod(") and s.endswith(")"):
        inner = _split_top_level(s[5:-1])
        if len(inner) != 2:
            raise GroupSpecError(f"prod(...) needs exactly two factors: {text!r}")
        return DirectProduct(parse_group_spec(inner[0]), parse_group_spec(inner[1]))
    if s.startswith("perm[") and s.endswith("]"):
        return _parse_perm_gens(s[5:-1])
    m = re.fullmatch(r"Z2\^(\d+)", s)
    if m:
        return ElementaryAbelian2(int(m.group(1)))
    m = re.fullmatch(r"([ZDS]):(\d+)", s)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise GroupSpecError(f"group size must be >= 1 in {text!r}")
        return {"Z": Cyclic, "D": Dihedral, "S": Symmetric}[kind](n)
    raise GroupSpecError(f"unrecognized group spec {text!r}")


def parse_subgroup(g: GroupTable, text: str) -> SubgroupHandle:
    """Generators as comma-separated element indices or labels; 'trivial' allowed.

    For dihedral groups the shorthand 'flip' names the first reflection.
    """
    s = text.strip()
    if s == "trivial":
        return subgroup_closure(g, ())
    gens = []
    for token in _split_top_level(s):
        token = token.strip()
        if not token:
            continue
        if token == "flip" and isinstance(g.spec, Dihedral):
            gens.append(g.spec.n)
            continue
        if re.fullmatch(r"\d+", token):
            idx = int(token)
            if idx >= g.order:
                raise GroupSpecError(f"element index {idx} out of range for {g.name}")
            gens.append(idx)
            continue
        try:
            gens.append(g.index_of_label(token))
        except KeyError:
            raise GroupSpecError(f"unknown element {token!r} in {g.name}") from None
    if not gens:
        raise GroupSpecError(f"no generators parsed from {text!r}")
    return subgroup_closure(g, gens)


def resolve_eta(ct: CharacterTable, selector: str, report: HarmonicReport | None) -> int:
    """'auto' picks the first missing harmonic (first nontrivial irreducible
    when no subgroup is given); otherwise a label or numeric index."""
    s = selector.strip()
    if s == "auto":
        if report is not None:
            if not report.missing:
                raise GroupSpecError(
                    "subgroup has no missing harmonic; pass an explicit --eta"
                )
            return report.missing[0]
        if ct.num_irreps < 2:
            raise GroupSpecError("trivial group has no nontrivial irreducible")
        return 1
    if re.fullmatch(r"\d+", s):
        idx = int(s)
        if idx >= ct.num_irreps:
            raise GroupSpecError(f"irreducible index {idx} out of range")
        return idx
    try:
        return ct.index_of_label(s)
    except KeyError:
        raise GroupSpecError(f"unknown irreducible label {s!r}") from None


# ---------------------------------------------------------------------------
# output helpers


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(f"{float(obj):.12g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _emit(payload: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _emit_json(doc: dict, out_path: str | None) -> None:
    _emit(json.dumps(_round_floats(doc), indent=2) + "\n", out_path)


def _fmt_complex(v: complex) -> str:
    re = round(v.real, 6) + 0.0  # rounding first keeps -1e-15 from printing as -0
    im = round(v.imag, 6) + 0.0
    return f"{re:.6f}{im:+.6f}i"


# ---------------------------------------------------------------------------
# commands


def _cmd_group(args) -> int:
    g = build_group(parse_group_spec(args.spec), max_order=args.max_order)
    doc = {
        "name": g.name,
        "order": g.order,
        "identity": g.identity,
        "labels": list(g.labels),
        "classes": [list(c) for c in g.classes],
    }
    _emit_json(doc, args.out)
    return EXIT_OK


def _cmd_chartable(args) -> int:
    g = build_group(parse_group_spec(args.group), max_order=args.max_order)
    ct = character_table(g)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["irrep"] + [g.labels[c[0]] for c in g.classes])
    for row, label in enumerate(ct.labels):
        writer.writerow([label] + [_fmt_complex(v) for v in ct.chars[row]])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def _cmd_harmonics(args) -> int:
    g = build_group(parse_group_spec(args.group), max_order=args.max_order)
    ct = character_table(g)
    h = parse_subgroup(g, args.subgroup)
    report = find_missing_harmonics(g, ct, h)
    doc = {
        "group": g.name,
        "subgroup": list(h.members),
        "subgroup_labels": list(h.member_labels()),
        "missing": list(report.missing_labels),
        "conditions": {
            c.name: {
                "holds": c.holds,
                "detail": c.detail,
                **({"witness": _jsonable(c.witness)} if c.witness else {}),
            }
            for c in report.conditions
        },
    }
    _emit_json(doc, args.out)
    return EXIT_OK


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _cmd_rank_audit(args) -> int:
    g = build_group(parse_group_spec(args.group), max_order=args.max_order)
    ct = character_table(g)
    reg = regular_representation(g)
    rows = []
    ok = True
    for h in all_subgroups(g):
        reg_rank = rank_of_projector(subgroup_average(reg, h))
        try:
            per_irrep = [
                rank_of_projector(subgroup_average(irrep_matrices(g, s), h))
                for s in range(ct.num_irreps)
            ]
        except UnsupportedFamilyError:
            return _fail(f"{g.name}: no explicit matrices for this family", EXIT_USAGE)
        weighted = sum(d * r for d, r in zip(ct.degrees, per_irrep))
        index = g.order // h.order
        passed = weighted == reg_rank == index
        ok = ok and passed
        rows.append(
            {
                "subgroup": list(h.members),
                "order": h.order,
                "index": index,
                "regular_rank": reg_rank,
                "sum_d_times_rank": weighted,
                "per_irrep_rank": per_irrep,
                "passed": passed,
            }
        )
    _emit_json({"group": g.name, "rows": rows, "passed": ok}, args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILURE


def _space_for(g: GroupTable, k: int, guard_opt: int | None) -> mr.MultiRegisterSpace:
    guard = guard_opt if guard_opt is not None else mr.dense_guard_from_env()
    return mr.MultiRegisterSpace(g, k, guard=guard)


def _per_subset_rows(space, eta, state) -> list[dict]:
    rows = []
    for subset in mr.nonempty_subsets(space.k):
        proj = mr.subset_projector(space, subset, eta)
        rows.append(
            {
                "I": list(subset),
                "trace": proj.trace_int(),
                "annihilation_residual": mr.verify_annihilation(proj, state),
            }
        )
    return rows


def _measure_doc(g, ct, h, eta, space, mode, trials, seed) -> dict:
    hidden = h if (h is not None and h.order > 1) else None
    state_subgroup = h if h is not None else subgroup_closure(g, ())
    state = mr.build_coset_state(space, state_subgroup, mode=mode)
    data = mr.span_data(space, eta)
    fraction = data.dimension / space.dim
    bound = mr.span_bound(
        space.dim, 2**space.k - 1, ct.degrees[eta] ** 2 * g.order ** (space.k - 1)
    )
    stats = mr.simulate_measurement(space, hidden, eta, trials=trials, seed=seed)
    return {
        "group": g.name,
        "k": space.k,
        "eta": ct.labels[eta],
        "subgroup": list(state_subgroup.members),
        "hidden": stats.hidden,
        "mode": mode,
        "seed": seed,
        "trials": trials,
        "dim_W": data.dimension,
        "fraction": fraction,
        "span_lower_bound": bound,
        "p_trivial_report": stats.empirical_frequency,
        "p_trivial_exact": stats.exact_probability,
        "per_subset": _per_subset_rows(space, eta, state),
    }


def _cmd_measure(args) -> int:
    g = build_group(parse_group_spec(args.group), max_order=args.max_order)
    ct = character_table(g)
    h = parse_subgroup(g, args.subgroup)
    report = find_missing_harmonics(g, ct, h) if h.order > 1 else None
    eta = resolve_eta(ct, args.eta, report)
    space = _space_for(g, args.k, args.guard)
    if args.mode == "dense":
        space.require_dense("dense measurement run")
    doc = _measure_doc(g, ct, h, eta, space, args.mode, args.trials, args.seed)
    _emit_json(doc, args.out)
    return EXIT_OK


def _cmd_kickback(args) -> int:
    g = build_group(parse_group_spec(args.group), max_order=args.max_order)
    ct = character_table(g)
    sigmas = tuple(resolve_eta(ct, tok.strip(), None) for tok in args.sigmas.split(","))
    eta = resolve_eta(ct, args.eta, None)
    circuit = build_kickback(g, sigmas)
    rng = np.random.default_rng(args.seed)
    residual = 0.0
    observed = 0
    diag = diagonal_projector(circuit, eta)
    for _ in range(max(args.trials, 1)):
        phi = rng.standard_normal(circuit.target_dim) + 1j * rng.standard_normal(
            circuit.target_dim
        )
        phi /= np.linalg.norm(phi)
        p = outcome_probability(circuit, eta, phi)
        direct = float(np.real(np.vdot(diag @ phi, diag @ phi)))
        residual = max(residual, abs(p - direct))
        if rng.random() < p:
            observed += 1
    doc = {
        "group": g.name,
        "sigmas": [ct.labels[s] for s in sigmas],
        "eta": ct.labels[eta],
        "trials": args.trials,
        "p_eta_observed": observed / args.trials if args.trials else 0.0,
        "cross_check_residual": residual,
        "intertwining_residual": verify_intertwining(circuit),
        "seed": args.seed,
    }
    _emit_json(doc, args.out)
    return EXIT_OK


def _audit_checks(g, ct, h, eta, space, trials, seed) -> list[dict]:
    checks: list[dict] = []

    def add(name, desc, residual, tol, passed=None):
        checks.append(
            {
                "name": name,
                "description": desc,
                "residual": float(residual),
                "tolerance": float(tol),
                "passed": bool(residual <= tol) if passed is None else bool(passed),
            }
        )

    sizes = g.class_sizes.astype(float)
    gram = (ct.chars * sizes[None, :] / g.order) @ ct.chars.conj().T
    add(
        "character_orthogonality",
        "rows of the character table are orthonormal under class weights",
        float(np.max(np.abs(gram - np.eye(ct.num_irreps)))),
        1e-10,
    )
    add(
        "degree_square_sum",
        "squared degrees add up to the group order",
        abs(sum(d * d for d in ct.degrees) - g.order),
        0.0,
    )

    report = None
    state = None
    if h is not None and h.order > 1:
        report = find_missing_harmonics(g, ct, h)
        add(
            "sufficient_conditions_imply_missing",
            "any satisfied condition comes with a nonempty missing set",
            0.0,
            0.0,
            passed=(not report.any_condition_holds) or bool(report.missing),
        )
        state = mr.build_coset_state(space, h, mode="ensemble")

    worst_trace = 0.0
    worst_annihilation = 0.0
    eta_missing = report is not None and eta in report.missing
    for subset in mr.nonempty_subsets(space.k):
        proj = mr.subset_projector(space, subset, eta)
        worst_trace = max(worst_trace, abs(proj.trace_int() - proj.expected_trace))
        if state is not None and eta_missing:
            worst_annihilation = max(
                worst_annihilation, mr.verify_annihilation(proj, state)
            )
    add(
        "subset_projector_trace",
        "every subset projector occupies the same predicted dimension",
        worst_trace,
        0.0,
    )
    if state is not None and eta_missing:
        add(
            "coset_state_annihilation",
            "every subset projector annihilates the hidden-subgroup state",
            worst_annihilation,
            1e-9,
        )

    expected_pair = mr.expected_pairwise_trace(space, eta)
    worst_pair = 0.0
    subsets = mr.nonempty_subsets(space.k)
    for a in range(len(subsets)):
        for b in range(a + 1, len(subsets)):
            t = mr.pairwise_trace(space, subsets[a], subsets[b], eta)
            worst_pair = max(worst_pair, abs(t - expected_pair) / expected_pair)
    add(
        "pairwise_trace_product",
        "distinct subset projectors have the product-trace of independent subspaces",
        worst_pair,
        1e-8,
    )

    data = mr.span_data(space, eta)
    fraction = data.dimension / space.dim
    d_small = ct.degrees[eta] ** 2 * g.order ** (space.k - 1)
    bound = mr.span_bound(space.dim, 2**space.k - 1, d_small)
    add(
        "span_lower_bound",
        f"span fraction {fraction:.6f} is at least the independence bound {bound:.6f}",
        max(bound - fraction, 0.0),
        1e-12,
    )
    if space.k >= math.ceil(math.log2(g.order)) and g.order > 1:
        add(
            "span_majority_threshold",
            "with k at least log2|G| the span fills at least half the space",
            max(0.5 - fraction, 0.0),
            0.0,
        )

    m_count = 2**space.k - 1
    fro = mr.frobenius_norm_squared(space, eta)
    predicted = m_count * d_small + m_count * (m_count - 1) * d_small**2 / space.dim
    add(
        "projector_sum_frobenius",
        "Frobenius norm of the projector sum matches the independence prediction",
        abs(fro - predicted) / predicted,
        1e-6,
    )

    table = mr.per_sigma_decomposition(space, eta)
    add(
        "per_block_average",
        "Plancherel-weighted block fractions reproduce the span fraction",
        abs(table.weighted_average - table.span_fraction),
        1e-8,
    )

    if trials > 0:
        hidden = h if (h is not None and h.order > 1) else None
        stats = mr.simulate_measurement(space, hidden, eta, trials=trials, seed=seed)
        if hidden is not None and eta_missing:
            add(
                "measurement_never_reports_trivial",
                "no trial reports 'trivial' when the hidden subgroup is a conjugate",
                float(stats.reports_trivial),
                0.0,
            )
        else:
            se = stats.standard_error
            add(
                "measurement_frequency",
                "empirical trivial-report frequency within 3 standard errors",
                abs(stats.empirical_frequency - stats.exact_probability),
                3.0 * se if se > 0 else 1e-12,
            )
    return checks


def _cmd_audit(args) -> int:
    g = build_group(parse_group_spec(args.group), max_order=args.max_order)
    ct = character_table(g)
    h = parse_subgroup(g, args.subgroup) if args.subgroup else None
    report = (
        find_missing_harmonics(g, ct, h) if h is not None and h.order > 1 else None
    )
    eta = resolve_eta(ct, args.eta, report)
    space = _space_for(g, args.k, args.guard)
    space.require_dense("audit")
    checks = _audit_checks(g, ct, h, eta, space, args.trials, args.seed)
    passed = all(c["passed"] for c in checks)
    doc = {
        "group": g.name,
        "subgroup": list(h.members) if h is not None else None,
        "eta": ct.labels[eta],
        "k": args.k,
        "checks": checks,
        "passed": passed,
    }
    for c in checks:
        sys.stderr.write(
            f"{'ok  ' if c['passed'] else 'FAIL'} {c['name']}: "
            f"residual {c['residual']:.3e} (tol {c['tolerance']:.3e})\n"
        )
    _emit_json(doc, args.out)
    return EXIT_OK if passed else EXIT_CHECK_FAILURE


def _cmd_sweep(args) -> int:
    g = build_group(parse_group_spec(args.group), max_order=args.max_order)
    ct = character_table(g)
    h = parse_subgroup(g, args.subgroup) if args.subgroup else None
    report = (
        find_missing_harmonics(g, ct, h) if h is not None and h.order > 1 else None
    )
    eta = resolve_eta(ct, args.eta, report)
    guard = args.guard if args.guard is not None else mr.dense_guard_from_env()
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["k", "dim_W", "fraction", "span_lower_bound", "p_trivial_report", "status"]
    )
    fractions = []
    for k in range(args.k_min, args.k_max + 1):
        space = mr.MultiRegisterSpace(g, k, guard=guard)
        if space.dim > guard:
            writer.writerow([k, "", "", "", "", "skipped(resource)"])
            continue
        data = mr.span_data(space, eta)
        fraction = data.dimension / space.dim
        bound = mr.span_bound(
            space.dim, 2**k - 1, ct.degrees[eta] ** 2 * g.order ** (k - 1)
        )
        hidden = h if (h is not None and h.order > 1) else None
        stats = mr.simulate_measurement(space, hidden, eta, trials=args.trials, seed=args.seed)
        fractions.append(fraction)
        writer.writerow(
            [
                k,
                data.dimension,
                f"{fraction:.12g}",
                f"{bound:.12g}",
                f"{stats.empirical_frequency:.12g}",
                "ok",
            ]
        )
    if any(b < a - 1e-12 for a, b in zip(fractions, fractions[1:])):
        sys.stderr.write("note: span fraction is not monotone over this sweep\n")
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-sieve",
        description="Multiregister Fourier-measurement toolkit for small finite groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group_positional=False):
        if group_positional:
            p.add_argument("spec", help="group spec, e.g. D:4 or prod(Z:2,S:3)")
        else:
            p.add_argument("--group", required=True, help="group spec, e.g. D:4")
        p.add_argument("--max-order", type=int, default=5040)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("group", help="build a group and print its table summary")
    common(p, group_positional=True)
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("chartable", help="character table as CSV")
    common(p)
    p.set_defaults(func=_cmd_chartable)

    p = sub.add_parser("harmonics", help="missing harmonics of a subgroup")
    common(p)
    p.add_argument("--subgroup", required=True, help="generators (labels/indices) or 'trivial'")
    p.set_defaults(func=_cmd_harmonics)

    p = sub.add_parser("rank-audit", help="rank decomposition audit over all subgroups")
    common(p)
    p.set_defaults(func=_cmd_rank_audit)

    p = sub.add_parser("measure", help="span measurement run with per-subset report")
    common(p)
    p.add_argument("--subgroup", default="trivial")
    p.add_argument("--eta", default="auto")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["dense", "ensemble"], default="ensemble")
    p.add_argument("--guard", type=int, default=None)
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("kickback", help="control-register measurement cross-check")
    common(p)
    p.add_argument("--sigmas", required=True, help="comma-separated irrep labels for the target")
    p.add_argument("--eta", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_kickback)

    p = sub.add_parser("audit", help="run the full invariant suite for one configuration")
    common(p)
    p.add_argument("--subgroup", default=None)
    p.add_argument("--eta", default="auto")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guard", type=int, default=None)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("sweep", help="fraction-vs-k table as CSV")
    common(p)
    p.add_argument("--subgroup", default=None)
    p.add_argument("--eta", default="auto")
    p.add_argument("--k-min", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guard", type=int, default=None)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except GroupSpecError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except HarmonicSieveError as exc:
        sys.stderr.write(f"check failure: {exc}\n")
        return EXIT_CHECK_FAILURE


def _fail(message: str, code: int) -> int:
    sys.stderr.write(message + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
