"""Batch CLI: table generation, basis construction, verification,
projection, differentiation, and the conditioning demo.

Every command writes its data files plus a run manifest (parameters and
sha256 content hashes).  Data files are byte-identical across reruns with
the same arguments; only the manifest duration field varies.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from .approx import (ENVELOPES, Expansion, OscTarget, evaluate_expansion,
                     load_expansion, project, reduce_frequency, residual_norm,
                     save_expansion)
from .basis import (BasisDegenerationError, basis_from_doc, build_basis,
                    load_basis, save_basis, save_basis_csv)
from .calculus import derivative_matrix_legtrig, to_orthogonal_basis
from .frequency import TWO_PI, parse_omega_spec
from .oracle import cond_estimate, hilbert_limit, member_gram, monomial_gram
from .pairing import LegTrigCoeffs, gram_matrix
from .tables import (build_tables, save_tables, save_tables_csv,
                     tables_from_doc, verify_tables)

MANIFEST_SCHEMA_VERSION = 1


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _manifest_path(out: Path) -> Path:
    stem = out.with_suffix("") if out.suffix else out
    return stem.parent / (stem.name + ".manifest.json")


def _write_manifest(command: str, args: argparse.Namespace,
                    inputs: list[Path], outputs: list[Path],
                    t0: float) -> Path:
    doc = {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "command": command,
        "parameters": {k: v for k, v in vars(args).items() if k != "func"},
        "inputs": [{"path": p.name, "sha256": _sha256(p)} for p in inputs],
        "outputs": [{"path": p.name, "sha256": _sha256(p),
                     "bytes": p.stat().st_size} for p in outputs],
        "duration_seconds": time.perf_counter() - t0,
    }
    path = _manifest_path(Path(args.out))
    path.write_text(json.dumps(doc, indent=2) + "\n")
    return path


def _write_json(doc: dict, path: Path) -> Path:
    path.write_text(json.dumps(doc, indent=2) + "\n")
    return path


def _announce(paths):
    for p in paths:
        print(f"wrote {p}")


def cmd_tables(args) -> int:
    t0 = time.perf_counter()
    freq = parse_omega_spec(args.omega)
    tables = build_tables(freq, args.n)
    out = Path(args.out)
    if args.format == "json":
        outputs = [save_tables(tables, out)]
    else:
        outputs = save_tables_csv(tables, out.with_suffix(""))
    manifest = _write_manifest("tables", args, [], outputs, t0)
    _announce(outputs + [manifest])
    return 0


def cmd_basis(args) -> int:
    t0 = time.perf_counter()
    freq = parse_omega_spec(args.omega)
    tables = build_tables(freq, args.n + 1)
    basis = build_basis(freq, args.n, tables,
                        reorthogonalize=args.reorthogonalize)
    G = gram_matrix(basis.rep, tables)
    dev = float(np.max(np.abs(G - np.eye(G.shape[0]))))
    print(f"self-check max|G - I| = {dev:.3e} against the table-based Gram")
    out = Path(args.out)
    if args.format == "json":
        outputs = [save_basis(basis, out)]
    else:
        outputs = [save_basis_csv(basis, out)]
    manifest = _write_manifest("basis", args, [], outputs, t0)
    _announce(outputs + [manifest])
    return 0


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    in_path = Path(args.input)
    with open(in_path) as fh:
        doc = json.load(fh)
    tol = args.tol
    if "rows" in doc:
        basis = basis_from_doc(doc)
        G = member_gram(basis.rep, basis.freq.omega)
        diff = np.abs(G - np.eye(G.shape[0]))
        flagged = [
            {"i": int(i), "j": int(j), "deviation": float(diff[i, j])}
            for i, j in zip(*np.nonzero(diff > tol))
        ]
        passed = not flagged
        max_dev = float(np.max(diff))
        report = {
            "schema_version": MANIFEST_SCHEMA_VERSION,
            "kind": "basis",
            "input": in_path.name,
            "tolerance": tol,
            "max_gram_deviation": max_dev,
            "flagged_entries": flagged,
            "passed": passed,
        }
        summary = f"max |G - I| = {max_dev:.3e}"
    elif "m1" in doc:
        tables = tables_from_doc(doc)
        result = verify_tables(tables, tol)
        passed = result.passed
        report = {
            "schema_version": MANIFEST_SCHEMA_VERSION,
            "kind": "tables",
            "input": in_path.name,
            **result.as_dict(),
        }
        worst = max(result.deviations.values())
        summary = f"max table deviation = {worst:.3e}"
    else:
        raise ValueError(
            f"{in_path}: not a tables or basis JSON document "
            "(missing both 'm1' and 'rows')"
        )
    out = Path(args.out) if args.out else in_path.with_suffix(".verify.json")
    args.out = str(out)
    outputs = [_write_json(report, out)]
    manifest = _write_manifest("verify", args, [in_path], outputs, t0)
    verdict = "PASS" if passed else "FAIL"
    print(f"verify {report['kind']}: {summary} (tolerance {tol:g}) -> {verdict}")
    _announce(outputs + [manifest])
    return 0 if passed else 1


def cmd_project(args) -> int:
    t0 = time.perf_counter()
    basis_path = Path(args.basis)
    basis = load_basis(basis_path)
    omega_raw = parse_omega_spec(args.omega_raw).omega
    target = OscTarget(f_env=ENVELOPES[args.f], g_env=ENVELOPES[args.g],
                       freq_raw=omega_raw)
    freq_red, reduced = reduce_frequency(target)
    exp = project(reduced, basis)
    resid = residual_norm(reduced, exp, basis)
    out = Path(args.out)
    outputs = [save_expansion(exp, out)]
    report = {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "omega_raw": omega_raw,
        "reduced_k": freq_red.k,
        "epsilon": omega_raw - TWO_PI * freq_red.k,
        "residual_norm": resid,
        "coefficient_decay": [
            {"index": i, "abs_coeff": float(abs(c))}
            for i, c in enumerate(exp.coeffs)
        ],
    }
    report_path = out.with_suffix(".report.json")
    outputs.append(_write_json(report, report_path))
    manifest = _write_manifest("project", args, [basis_path], outputs, t0)
    print(f"residual_norm = {resid:.6e}")
    _announce(outputs + [manifest])
    return 0


def cmd_diff(args) -> int:
    t0 = time.perf_counter()
    basis_path = Path(args.basis)
    exp_path = Path(args.expansion)
    basis = load_basis(basis_path)
    exp = load_expansion(exp_path)
    have = basis.content_hash()
    if exp.basis_ref.basis_hash != have:
        raise ValueError(
            f"expansion references basis {exp.basis_ref.basis_hash[:12]}... "
            f"but {basis_path.name} has hash {have[:12]}..."
        )
    op = to_orthogonal_basis(
        derivative_matrix_legtrig(basis.freq, basis.n_max), basis)
    d_exp = Expansion(basis_ref=exp.basis_ref, coeffs=op.d_orth @ exp.coeffs)
    out = Path(args.out)
    outputs = [save_expansion(d_exp, out)]

    xs = np.linspace(-0.9, 0.9, 21)
    deriv = evaluate_expansion(d_exp, basis, xs)
    h = 1e-5
    f = lambda t: evaluate_expansion(exp, basis, t)  # noqa: E731
    fd = (8.0 * (f(xs + h) - f(xs - h)) - (f(xs + 2 * h) - f(xs - 2 * h))) / (12.0 * h)
    max_dev = float(np.max(np.abs(deriv - fd)))
    rel_dev = max_dev / max(1.0, float(np.max(np.abs(deriv))))
    report = {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "similarity_residual": op.similarity_residual,
        "fd_points": len(xs),
        "max_fd_deviation": max_dev,
        "max_fd_relative_deviation": rel_dev,
    }
    report_path = out.with_suffix(".report.json")
    outputs.append(_write_json(report, report_path))
    manifest = _write_manifest("diff", args, [basis_path, exp_path], outputs, t0)
    print(f"max finite-difference deviation = {max_dev:.3e} "
          f"(relative {rel_dev:.3e}) at {len(xs)} points")
    _announce(outputs + [manifest])
    return 0


def cmd_hilbert_demo(args) -> int:
    t0 = time.perf_counter()
    n = args.n
    if n < 0 or n > 12:
        raise ValueError(f"--n must be between 0 and 12 (desk scale), got {n}")
    specs = [s.strip() for s in args.omegas.split(",") if s.strip()]
    if not specs:
        raise ValueError("--omegas must list at least one frequency")
    L = hilbert_limit(n)
    lines = ["omega,max_dev_from_limit,cond_monomial_gram,cond_legtrig_gram"]
    for spec in specs:
        freq = parse_omega_spec(spec)
        H = monomial_gram(freq, n)
        dev = float(np.max(np.abs(H - L)))
        cond_m = cond_estimate(H)
        tables = build_tables(freq, n)
        rows = []
        for j in range(n + 1):
            e = np.zeros(j + 1)
            e[j] = 1.0
            rows.append(LegTrigCoeffs(a=e / np.sqrt(tables.m3[j, j]),
                                      b=np.zeros(j + 1)))
            rows.append(LegTrigCoeffs(a=np.zeros(j + 1),
                                      b=e / np.sqrt(tables.m4[j, j])))
        cond_l = cond_estimate(gram_matrix(rows, tables))
        lines.append(",".join(
            format(v, ".17g") for v in (freq.omega, dev, cond_m, cond_l)))
        print(f"omega={freq.omega:.6g}: max|H - L|={dev:.3e} "
              f"cond(H)={cond_m:.3e} cond(legtrig)={cond_l:.3e}")
    out = Path(args.out)
    out.write_text("\n".join(lines) + "\n")
    manifest = _write_manifest("hilbert-demo", args, [], [out], t0)
    _announce([out, manifest])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscbasis",
        description="Orthonormal polynomial-trig bases for oscillatory "
                    "function approximation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="build the inner-product tables M1..M6")
    t.add_argument("--omega", required=True,
                   help="frequency: a real number or the exact form '2pi*k'")
    t.add_argument("--n", required=True, type=int, help="largest Legendre degree")
    t.add_argument("--out", default="tables.json", help="output path")
    t.add_argument("--format", choices=("json", "csv"), default="json")
    t.set_defaults(func=cmd_tables)

    b = sub.add_parser("basis", help="build the orthonormal basis")
    b.add_argument("--omega", required=True,
                   help="frequency: a real number or the exact form '2pi*k'")
    b.add_argument("--n", required=True, type=int, help="largest pair index N")
    b.add_argument("--reorthogonalize", action="store_true",
                   help="extra orthogonalization pass per new row")
    b.add_argument("--out", default="basis.json", help="output path")
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.set_defaults(func=cmd_basis)

    v = sub.add_parser("verify", help="check a tables or basis file against "
                                      "the quadrature oracle")
    v.add_argument("input", help="tables or basis JSON file")
    v.add_argument("--tol", type=float, default=1e-10,
                   help="deviation tolerance (default 1e-10)")
    v.add_argument("--out", default=None,
                   help="report path (default <input>.verify.json)")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("project", help="project an oscillatory target onto "
                                       "a basis")
    p.add_argument("--basis", required=True, help="basis JSON file")
    p.add_argument("--f", required=True, choices=sorted(ENVELOPES),
                   help="sine-part envelope")
    p.add_argument("--g", required=True, choices=sorted(ENVELOPES),
                   help="cosine-part envelope")
    p.add_argument("--omega-raw", required=True,
                   help="raw target frequency (reduction applied automatically)")
    p.add_argument("--out", default="expansion.json", help="output path")
    p.set_defaults(func=cmd_project)

    d = sub.add_parser("diff", help="differentiate an expansion via B^-1 D B")
    d.add_argument("--basis", required=True, help="basis JSON file")
    d.add_argument("--expansion", required=True, help="expansion JSON file")
    d.add_argument("--out", default="derivative.json", help="output path")
    d.set_defaults(func=cmd_diff)

    h = sub.add_parser("hilbert-demo",
                       help="conditioning comparison: monomial-trig Gram vs "
                            "its Hilbert-like limit vs Legendre-trig Gram")
    h.add_argument("--n", required=True, type=int, help="matrix size N (<= 12)")
    h.add_argument("--omegas", required=True,
                   help="comma-separated list of frequency specs")
    h.add_argument("--out", default="hilbert_demo.csv", help="output CSV path")
    h.set_defaults(func=cmd_hilbert_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, BasisDegenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
