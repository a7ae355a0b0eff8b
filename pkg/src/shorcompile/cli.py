"""Command line front end.

Subcommands
-----------
tables       emit the classical tables (orders, allowed periods,
             measurement probabilities, separability) as text, CSV or JSON
circuit      show, verify or cost a bundled or user-supplied circuit
synth        build a truth table for a**x mod N and synthesize a circuit
simulate     dense simulation of the period-map register pair
factor       end-to-end order finding plus classical post-processing
diff-golden  recompute every bundled table and circuit and compare

Exit codes: 0 success, 1 verification or diff failure, 2 invalid input,
3 synthesis budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from importlib import resources
from typing import Callable

from . import __version__
from .circuit import (
    Circuit,
    CostReport,
    circuit_from_json,
    circuit_to_json,
    compare_cost,
    cost,
    render_gates,
    verify,
)
from .library import FIGURE_IDS, find_entry, library_entry
from .modexp import GKind, TruthTable, build_modexp_table, classical_compile, full_compile, uncompiled
from .numtheory import (
    PostProcessStatus,
    TrivialFactorError,
    allowed_periods,
    carmichael,
    coprime_order_table,
    factor_semiprime,
    gcd,
    is_prime,
    is_prime_power,
    multiplicative_order,
    shor_postprocess,
)
from .qsim import (
    NoiseParams,
    ProbDist,
    apply_period_map,
    depolarize,
    estimate_epsilon,
    input_probabilities,
    noisy_separability,
    order_finding_run,
    qft_input,
    reduce_to_input,
    sample,
    separability_index,
    uniform_input_state,
)
from .synth import SynthesisBudget, SynthesisError, synthesize

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

# guard against float dust right at a golden tolerance boundary
_TOL_SLACK = 1e-9


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _manifest(command: str, params: dict, seed: int | None, checksums: dict[str, str]) -> dict:
    return {
        "command": command,
        "params": params,
        "seed": seed,
        "version": __version__,
        "checksums": checksums,
    }


def _csv_text(header: list[str], rows: list[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _text_table(header: list[str], rows: list[tuple]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells)


def _cost_line(report: CostReport) -> str:
    line = f"N_T={report.n_toffoli} N_CN={report.n_cnot}"
    if report.n_not:
        line += f" N_NOT={report.n_not}"
    return line + f" qcost={report.quantum_cost}"


# ---------------------------------------------------------------- tables


def _distribution_for_period(m: int, k: int, p: int) -> ProbDist:
    state = apply_period_map(uniform_input_state(m, k), p)
    return input_probabilities(qft_input(state))


def _orders_rows(n: int) -> list[tuple]:
    factor_semiprime(n)  # rejects anything but an odd distinct-prime semiprime
    return [(rec.a, rec.r) for rec in coprime_order_table(n)]


def _allowed_rows(max_n: int) -> list[tuple]:
    rows = []
    for n in range(15, max_n + 1, 2):
        try:
            sp = factor_semiprime(n)
        except ValueError:
            continue
        lam = carmichael(sp.p, sp.q)
        periods = ";".join(str(d) for d in allowed_periods(sp.p, sp.q))
        rows.append((n, sp.p, sp.q, lam, periods))
    return rows


def _probability_rows(m: int, k: int) -> list[tuple]:
    rows = []
    for p in range(1, min(1 << m, 1 << k) + 1):
        dist = _distribution_for_period(m, k, p)
        rows.extend((p, i, f"{float(v):.6f}") for i, v in enumerate(dist.probabilities))
    return rows


def _separability_rows(m: int, k: int) -> list[tuple]:
    rows = []
    for p in range(1, min(1 << m, 1 << k) + 1):
        s = separability_index(_distribution_for_period(m, k, p))
        rows.append((p, f"{s:.6f}"))
    return rows


def _golden_rows(name: str) -> list[dict[str, str]]:
    text = resources.files("shorcompile").joinpath("golden").joinpath(name).read_text(encoding="utf-8")
    return list(csv.DictReader(io.StringIO(text)))


def _diff_orders(n: int) -> list[str]:
    try:
        golden = _golden_rows(f"orders_n{n}.csv")
    except FileNotFoundError:
        raise ValueError(f"no bundled golden order table for N={n}")
    computed = dict(_orders_rows(n))
    problems = []
    seen = set()
    for row in golden:
        a, r = int(row["a"]), int(row["r"])
        seen.add(a)
        if computed.get(a) != r:
            problems.append(f"orders N={n}: a={a} expected r={r}, computed {computed.get(a)}")
    for a in sorted(set(computed) - seen):
        problems.append(f"orders N={n}: computed extra row a={a}")
    return problems


def _diff_allowed(max_n: int) -> list[str]:
    golden = _golden_rows("allowed_periods.csv")
    computed = {row[0]: row for row in _allowed_rows(max_n)}
    problems = []
    seen = set()
    for row in golden:
        n = int(row["N"])
        seen.add(n)
        want = (n, int(row["p"]), int(row["q"]), int(row["lambda"]), row["periods"])
        got = computed.get(n)
        if got != want:
            problems.append(f"allowed periods N={n}: expected {want}, computed {got}")
    for n in sorted(set(computed) - seen):
        problems.append(f"allowed periods: computed extra row N={n}")
    return problems


def _diff_probabilities(m: int, k: int) -> list[str]:
    if (m, k) != (3, 3):
        raise ValueError("bundled probability golden covers m=3, k=3 only")
    golden = _golden_rows("probabilities_m3.csv")
    dists = {p: _distribution_for_period(m, k, p) for p in range(1, (1 << m) + 1)}
    problems = []
    for row in golden:
        p, i = int(row["p"]), int(row["k"])
        want, tol = float(row["probability"]), float(row["tolerance"])
        got = float(dists[p].probabilities[i])
        if abs(got - want) > tol + _TOL_SLACK:
            problems.append(f"probability p={p} k={i}: golden {want}, computed {got:.6f}")
    return problems


def _diff_separability(m: int, k: int) -> list[str]:
    if (m, k) != (3, 3):
        raise ValueError("bundled separability golden covers m=3, k=3 only")
    golden = _golden_rows("separability_m3.csv")
    problems = []
    for row in golden:
        p = int(row["p"])
        want, tol = float(row["S"]), float(row["tolerance"])
        got = separability_index(_distribution_for_period(m, k, p))
        if abs(got - want) > tol + _TOL_SLACK:
            problems.append(f"separability p={p}: golden {want}, computed {got:.6f}")
    return problems


def _diff_rho() -> list[str]:
    golden = _golden_rows("rho_p3.csv")
    state = qft_input(apply_period_map(uniform_input_state(3, 3), 3))
    rho = reduce_to_input(state).entries
    problems = []
    for row in golden:
        r, c = int(row["row"]), int(row["col"])
        tol = float(row["tolerance"]) + _TOL_SLACK
        got = rho[r, c]
        dre = abs(got.real - float(row["re"]))
        dim = abs(got.imag - float(row["im"]))
        if dre > tol or dim > tol:
            problems.append(
                f"rho[{r},{c}]: golden {row['re']}{float(row['im']):+}j, computed {got:.6f}"
            )
    return problems


def _check_circuits() -> list[str]:
    problems = []
    for name in FIGURE_IDS:
        entry = library_entry(name)
        bad = verify(entry.circuit, entry.table)
        if bad:
            problems.append(f"{name}: {len(bad)} mismatching rows, first at x={bad[0].x}")
        report = cost(entry.circuit)
        if (report.n_toffoli, report.n_cnot) != (entry.caption_toffoli, entry.caption_cnot):
            problems.append(
                f"{name}: counts T={report.n_toffoli} CN={report.n_cnot}, "
                f"caption T={entry.caption_toffoli} CN={entry.caption_cnot}"
            )
    return problems


def cmd_tables(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "orders":
        header = ["a", "r"]
        rows = _orders_rows(args.n)
        params = {"N": args.n}
        stem = f"orders_n{args.n}"
        differ: Callable[[], list[str]] = lambda: _diff_orders(args.n)
    elif kind == "allowed-periods":
        header = ["N", "p", "q", "lambda", "periods"]
        rows = _allowed_rows(args.max_n)
        params = {"max_N": args.max_n}
        stem = f"allowed_periods_max{args.max_n}"
        differ = lambda: _diff_allowed(args.max_n)
    elif kind == "probabilities":
        header = ["p", "k", "probability"]
        rows = _probability_rows(args.m, args.k)
        params = {"m": args.m, "k": args.k}
        stem = f"probabilities_m{args.m}k{args.k}"
        differ = lambda: _diff_probabilities(args.m, args.k)
    else:
        header = ["p", "S"]
        rows = _separability_rows(args.m, args.k)
        params = {"m": args.m, "k": args.k}
        stem = f"separability_m{args.m}k{args.k}"
        differ = lambda: _diff_separability(args.m, args.k)

    if args.diff_golden:
        problems = differ()
        for msg in problems:
            print(msg)
        label = "ok" if not problems else f"{len(problems)} mismatches"
        print(f"golden diff {kind}: {label}")
        return EXIT_OK if not problems else EXIT_MISMATCH

    csv_text = _csv_text(header, rows)
    doc = {
        "manifest": _manifest("tables", {"kind": kind, **params}, None, {"csv": _sha256(csv_text)}),
        "header": header,
        "rows": [list(r) for r in rows],
    }
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        csv_path = os.path.join(args.out, stem + ".csv")
        json_path = os.path.join(args.out, stem + ".json")
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        print(f"wrote {csv_path}")
        print(f"wrote {json_path}")
    elif args.format == "csv":
        sys.stdout.write(csv_text)
    elif args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(_text_table(header, rows))
    return EXIT_OK


# ---------------------------------------------------------------- circuit


def _load_circuit(args: argparse.Namespace) -> tuple[Circuit, TruthTable | None, str]:
    if args.id and args.file:
        raise ValueError("pass either --id or --file, not both")
    if args.id:
        entry = library_entry(args.id)
        circ, table, label = entry.circuit, entry.table, entry.name
    elif args.file:
        with open(args.file, encoding="utf-8") as fh:
            circ = circuit_from_json(fh.read())
        table, label = None, args.file
    else:
        raise ValueError("one of --id or --file is required")
    if args.table:
        with open(args.table, encoding="utf-8") as fh:
            table = TruthTable.from_json(fh.read())
    return circ, table, label


def cmd_circuit(args: argparse.Namespace) -> int:
    circ, table, label = _load_circuit(args)
    if args.action == "cost":
        print(_cost_line(cost(circ)))
        return EXIT_OK
    if args.action == "show":
        print(f"{label}: width={circ.width} inputs={list(circ.input_lines)} outputs={list(circ.output_lines)}")
        print(render_gates(circ))
        print(_cost_line(cost(circ)))
        return EXIT_OK
    # verify
    if table is None:
        raise ValueError("verify needs a truth table; pass --id or --table")
    mismatches = verify(circ, table)
    if not mismatches:
        print(f"ok: {label} matches its table on all {len(table.rows)} rows")
        return EXIT_OK
    for mm in mismatches[:16]:
        print(f"mismatch at x={mm.x}: expected {mm.expected}, got {mm.got} (input after: {mm.input_after})")
    if len(mismatches) > 16:
        print(f"... {len(mismatches) - 16} more")
    print(f"FAIL: {len(mismatches)} of {len(table.rows)} rows differ")
    return EXIT_MISMATCH


# ---------------------------------------------------------------- synth


def cmd_synth(args: argparse.Namespace) -> int:
    a, n, strategy = args.a, args.n, args.compile
    r = multiplicative_order(a, n)
    if strategy == "full":
        compiled = full_compile(a, n)
    else:
        n_in = args.n_in
        if n_in is None:
            entry = find_entry(a, n, strategy)
            n_in = entry.circuit.n_in if entry else max(1, (r - 1).bit_length())
        if strategy == "none":
            compiled = uncompiled(a, n, n_in)
        else:
            base = build_modexp_table(a, n, n_in)
            compiled = classical_compile(base, a, n, GKind(strategy))
    table = compiled.table

    budget = SynthesisBudget(
        max_quantum_cost=args.max_cost,
        max_gates=args.max_gates,
        allow_negative_controls=not args.no_negative_controls,
        exhaustive_fallback=args.fallback,
    )
    circ = synthesize(table, budget)
    report = cost(circ)

    circ_json = circuit_to_json(circ)
    doc = {
        "manifest": _manifest(
            "synth",
            {"a": a, "N": n, "compile": strategy, "n_in": table.n_in},
            None,
            {"circuit": _sha256(circ_json)},
        ),
        "level": compiled.level.value,
        "g": compiled.g.kind.value,
        "table": json.loads(table.to_json()),
        "circuit": json.loads(circ_json),
        "cost": {
            "n_toffoli": report.n_toffoli,
            "n_cnot": report.n_cnot,
            "n_not": report.n_not,
            "quantum_cost": report.quantum_cost,
        },
    }

    entry = find_entry(a, n, strategy)
    comparison = None
    if entry is not None:
        if entry.table == table:
            delta = compare_cost(circ, entry.circuit, table)
        else:
            delta = compare_cost(circ, entry.circuit)
        comparison = {"library": entry.name, "library_qcost": cost(entry.circuit).quantum_cost, "delta": delta}
        doc["comparison"] = comparison

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    if args.format == "json" and not args.out:
        print(json.dumps(doc, indent=2))
        return EXIT_OK

    print(f"f(x) = {a}**x mod {n}, r={r}, level={compiled.level.value}, g={compiled.g.kind.value}")
    print(f"table: n_in={table.n_in} n_out={table.n_out} rows={list(table.rows)}")
    print(render_gates(circ))
    print(_cost_line(report))
    if comparison:
        if entry is not None and entry.table != table:
            print(f"note: bundled {comparison['library']} realizes a different table for this triple")
        print(
            f"library {comparison['library']}: qcost={comparison['library_qcost']} "
            f"delta={comparison['delta']:+d}"
        )
    if args.out:
        print(f"wrote {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------- simulate


def _fmt_dist(dist: ProbDist) -> str:
    return " ".join(f"{float(v):.6f}" for v in dist.probabilities)


def cmd_simulate(args: argparse.Namespace) -> int:
    m, k, p = args.m, args.k, args.p
    noise = NoiseParams(args.epsilon)
    state = qft_input(apply_period_map(uniform_input_state(m, k), p), inverse=args.inverse_qft)
    clean = input_probabilities(state)
    s_theory = separability_index(clean)
    noisy = depolarize(clean, noise)
    s_pred = noisy_separability(s_theory, noise, m)
    floor = 1.0 / (1 << m)

    payload: dict = {
        "p": p,
        "m": m,
        "k": k,
        "epsilon": noise.epsilon,
        "theoretical": [float(v) for v in clean.probabilities],
        "noisy": [float(v) for v in noisy.probabilities],
        "s_theory": s_theory,
        "s_noisy_predicted": s_pred,
    }
    lines = [
        f"p={p} m={m} k={k} epsilon={noise.epsilon}",
        f"theoretical: {_fmt_dist(clean)}",
    ]
    if noise.epsilon < 1.0:
        lines.append(f"noisy:       {_fmt_dist(noisy)}")
    lines.append(f"S_theory={s_theory:.6f} S_noisy_predicted={s_pred:.6f}")

    if args.shots:
        empirical = sample(noisy, args.shots, args.seed)
        s_obs = separability_index(empirical)
        payload["shots"] = args.shots
        payload["empirical"] = [float(v) for v in empirical.probabilities]
        payload["s_observed"] = s_obs
        lines.append(f"empirical:   {_fmt_dist(empirical)}  (shots={args.shots} seed={args.seed})")
        lines.append(f"S_observed={s_obs:.6f}")
        if s_theory > floor + 1e-12:
            est = estimate_epsilon(s_theory, s_obs, m)
            payload["epsilon_estimate"] = est
            lines.append(f"epsilon_estimate={est:.6f}")
        else:
            payload["epsilon_estimate"] = None
            lines.append("epsilon_estimate: n/a (separability already at the 1/2^m floor)")

    if args.rho:
        rho = reduce_to_input(state)
        payload["rho"] = json.loads(rho.to_json())
        lines.append("reduced input density matrix:")
        for row in rho.entries:
            lines.append("  " + " ".join(f"{z.real:+.4f}{z.imag:+.4f}j" for z in row))

    if args.format == "json":
        doc = {
            "manifest": _manifest(
                "simulate",
                {"p": p, "m": m, "k": k, "epsilon": noise.epsilon, "shots": args.shots},
                args.seed,
                {"payload": _sha256(json.dumps(payload, sort_keys=True))},
            ),
            **payload,
        }
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------- factor


def _factor_attempt(n: int, a: int, shots: int, seed: int) -> dict:
    run = order_finding_run(a, n, shots, seed)
    attempt: dict = {"a": a, "recovered_order": run.recovered_order, "m": run.m}
    if run.recovered_order is None:
        attempt["status"] = "order-not-recovered"
        return attempt
    try:
        outcome = shor_postprocess(n, a, run.recovered_order)
    except TrivialFactorError:
        attempt["status"] = "trivial-factor"
        return attempt
    attempt["status"] = outcome.status.value
    if outcome.status is PostProcessStatus.FACTORS:
        attempt["factors"] = list(outcome.factors)
    return attempt


def cmd_factor(args: argparse.Namespace) -> int:
    n = args.n
    if n < 3 or n % 2 == 0:
        raise ValueError("N must be an odd integer >= 3")
    if is_prime(n):
        raise ValueError(f"N={n} is prime")
    power = is_prime_power(n)
    if power:
        raise ValueError(f"N={n} is a prime power: {power[0]}**{power[1]}")

    if args.a is not None:
        g = gcd(args.a, n)
        if g != 1:
            if 1 < g < n:
                print(f"gcd({args.a}, {n}) = {g} already factors N")
                print(f"factors: {g} {n // g}")
                return EXIT_OK
            raise ValueError(f"a={args.a} is not a valid base for N={n}")
        bases = [args.a]
    else:
        bases = [a for a in range(2, n - 1) if gcd(a, n) == 1]

    attempts = []
    factors = None
    for idx, a in enumerate(bases):
        attempt = _factor_attempt(n, a, args.shots, args.seed + idx)
        attempts.append(attempt)
        order = attempt["recovered_order"]
        status = attempt["status"]
        print(f"a={a}: shots={args.shots} M={1 << attempt['m']} recovered_order={order} status={status}")
        if status == PostProcessStatus.FACTORS.value:
            factors = attempt["factors"]
            break

    if args.format == "json":
        doc = {
            "manifest": _manifest(
                "factor",
                {"N": n, "a": args.a, "shots": args.shots},
                args.seed,
                {"payload": _sha256(json.dumps(attempts, sort_keys=True))},
            ),
            "attempts": attempts,
            "factors": factors,
        }
        print(json.dumps(doc, indent=2))

    if factors:
        print(f"factors: {factors[0]} {factors[1]}")
        return EXIT_OK
    print("no factors recovered")
    return EXIT_MISMATCH


# ---------------------------------------------------------------- diff-golden


def cmd_diff_golden(args: argparse.Namespace) -> int:
    checks: list[tuple[str, Callable[[], list[str]]]] = [
        ("orders N=21", lambda: _diff_orders(21)),
        ("orders N=33", lambda: _diff_orders(33)),
        ("allowed periods", lambda: _diff_allowed(90)),
        ("probabilities m=3 k=3", lambda: _diff_probabilities(3, 3)),
        ("separability m=3 k=3", lambda: _diff_separability(3, 3)),
        ("reduced density p=3", _diff_rho),
        ("figure circuits", _check_circuits),
    ]
    failed = 0
    for label, check in checks:
        problems = check()
        print(f"{label}: {'ok' if not problems else 'FAIL'}")
        for msg in problems[:20]:
            print(f"  {msg}")
        failed += 1 if problems else 0
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


# ---------------------------------------------------------------- parser


def _add_table_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", help="directory to write <table>.csv and <table>.json into")
    p.add_argument("--diff-golden", action="store_true", help="compare against the bundled golden table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shorcompile", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    tables = sub.add_parser("tables", help="emit classical tables")
    tsub = tables.add_subparsers(dest="kind", required=True)
    t_orders = tsub.add_parser("orders", help="multiplicative orders of every coprime base")
    t_orders.add_argument("--N", dest="n", type=int, required=True)
    _add_table_common(t_orders)
    t_allowed = tsub.add_parser("allowed-periods", help="divisor spectrum of lambda(N) per semiprime")
    t_allowed.add_argument("--max-N", dest="max_n", type=int, default=90)
    _add_table_common(t_allowed)
    t_prob = tsub.add_parser("probabilities", help="post-transform measurement distributions per period")
    t_prob.add_argument("--m", type=int, default=3)
    t_prob.add_argument("--k", type=int, default=3)
    _add_table_common(t_prob)
    t_sep = tsub.add_parser("separability", help="separability index per period")
    t_sep.add_argument("--m", type=int, default=3)
    t_sep.add_argument("--k", type=int, default=3)
    _add_table_common(t_sep)
    tables.set_defaults(func=cmd_tables)

    circ = sub.add_parser("circuit", help="inspect or check a reversible circuit")
    circ.add_argument("action", choices=("show", "verify", "cost"))
    circ.add_argument("--id", help="bundled circuit id, e.g. f4_21")
    circ.add_argument("--file", help="circuit JSON file")
    circ.add_argument("--table", help="truth table JSON file to verify against")
    circ.set_defaults(func=cmd_circuit)

    synth = sub.add_parser("synth", help="synthesize a circuit for a**x mod N")
    synth.add_argument("--a", type=int, required=True)
    synth.add_argument("--N", dest="n", type=int, required=True)
    synth.add_argument("--compile", choices=("none", "log", "affine", "rank", "full"), default="full")
    synth.add_argument("--n-in", dest="n_in", type=int, help="input register width (defaults per strategy)")
    synth.add_argument("--max-cost", dest="max_cost", type=int, default=1_000_000)
    synth.add_argument("--max-gates", dest="max_gates", type=int, default=1_000_000)
    synth.add_argument("--no-negative-controls", action="store_true")
    synth.add_argument("--fallback", action="store_true", help="enable the bounded exhaustive fallback")
    synth.add_argument("--out", help="write the result document to this JSON file")
    synth.add_argument("--format", choices=("text", "json"), default="text")
    synth.set_defaults(func=cmd_synth)

    sim = sub.add_parser("simulate", help="simulate the two-register period-map state")
    sim.add_argument("--p", type=int, required=True, help="period of the wrapped map")
    sim.add_argument("--m", type=int, default=3)
    sim.add_argument("--k", type=int, default=3)
    sim.add_argument("--epsilon", type=float, default=1.0, help="coherent fraction; 1 = noiseless")
    sim.add_argument("--shots", type=int, default=0, help="0 reports the theoretical distribution only")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--rho", action="store_true", help="include the reduced input density matrix")
    sim.add_argument("--inverse-qft", dest="inverse_qft", action="store_true")
    sim.add_argument("--format", choices=("text", "json"), default="text")
    sim.set_defaults(func=cmd_simulate)

    fac = sub.add_parser("factor", help="factor an odd non-prime-power N by order finding")
    fac.add_argument("--N", dest="n", type=int, required=True)
    fac.add_argument("--a", type=int, help="base; omitted = scan all coprime bases")
    fac.add_argument("--shots", type=int, default=128)
    fac.add_argument("--seed", type=int, default=0)
    fac.add_argument("--format", choices=("text", "json"), default="text")
    fac.set_defaults(func=cmd_factor)

    diff = sub.add_parser("diff-golden", help="recompute all bundled tables and circuits and compare")
    diff.set_defaults(func=cmd_diff_golden)

    return parser


def entrypoint(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SynthesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(entrypoint())


if __name__ == "__main__":
    main()
