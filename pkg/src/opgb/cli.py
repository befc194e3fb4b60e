"""Command line front end.

Subcommands take a measure spec file (JSON, see gram.parse_measure_spec)
and emit a canonical JSON document with a frozen "schema":"1" field:
sorted keys, compact separators, fractions as lowest-terms "p/q" strings,
floats as JSON numbers. Exit codes: 0 success, 2 when the mathematics
refuses (quasi-definiteness or transform admissibility fails), 1 for
malformed input or misuse.

    opgb polys --spec measure.json --n 4
    opgb quadrature --spec measure.json --k 3
    opgb transform --spec measure.json --transform christoffel --root 2 --root 3
    opgb transform --spec measure.json --transform geronimus --g-root 2 --xi 1/2
    opgb classical-check --spec hermite.json --n 8
    opgb identities --spec measure.json --n 5 --seed 7
    opgb plot-data --spec measure.json --n 3 --range -2:2 --samples 50
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import biorth, classical, gram, quad, transforms
from .errors import (
    DegenerateDenominator,
    DegenerateRecurrence,
    InsufficientTruncation,
    NonPositive,
    NotCoprime,
    NotHankel,
    NotQuasiDefinite,
    OpgbError,
    PoleAtAtom,
    SingularBlock,
    SingularJetMatrix,
    SingularTruncation,
    UnsupportedMeasure,
    ZeroAtRoot,
    ZeroDenominator,
)
from .numlin import Matrix, char_poly, unit_lower_inverse
from .poly import poly_eval
from .scalars import format_scalar, parse_scalar

ADMISSIBILITY_ERRORS = (
    NotQuasiDefinite,
    ZeroAtRoot,
    SingularJetMatrix,
    ZeroDenominator,
    DegenerateDenominator,
    NotCoprime,
    PoleAtAtom,
    NonPositive,
    DegenerateRecurrence,
    SingularBlock,
    SingularTruncation,
)

COMMANDS = ("polys", "quadrature", "transform", "classical-check", "identities", "plot-data")


@dataclass
class JobSpec:
    command: str
    spec: dict
    n: int = 4
    k: int = 3
    mode: str = "exact"
    seed: int = 0
    transform: str = "christoffel"
    roots: tuple = ()
    g_roots: tuple = ()
    xis: tuple = ()
    c0s: tuple = ()
    plot_range: tuple = (-1.0, 1.0)
    samples: int = 20


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def fmt(x):
    """Scalar to JSON value: floats stay numbers, exact scalars become strings."""
    if isinstance(x, float):
        return x
    return format_scalar(x)


def fmt_list(xs):
    return [fmt(x) for x in xs]


def _as_float_matrix(g: Matrix) -> Matrix:
    return Matrix([[float(v) for v in row] for row in g.rows])


def _measure_and_gram(job: JobSpec, n: int):
    source = gram.parse_measure_spec(job.spec)
    g = gram.gram_matrix(source, n)
    if job.mode == "float":
        g = _as_float_matrix(g)
    return source, g


def _residual(a, b):
    d = a - b
    return abs(d)


def run(job: JobSpec):
    """Execute a job; returns (payload dict, exit code)."""
    try:
        payload = _dispatch(job)
        payload["schema"] = "1"
        return payload, 0
    except ADMISSIBILITY_ERRORS as exc:
        payload = {"schema": "1", "error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, NotQuasiDefinite):
            payload["index"] = exc.index
        return payload, 2
    except (UnsupportedMeasure, json.JSONDecodeError) as exc:
        return {"schema": "1", "error": "schema", "message": str(exc)}, 1
    except (NotHankel, InsufficientTruncation, ValueError) as exc:
        return {"schema": "1", "error": type(exc).__name__, "message": str(exc)}, 1


def _dispatch(job: JobSpec):
    if job.command == "polys":
        return _cmd_polys(job)
    if job.command == "quadrature":
        return _cmd_quadrature(job)
    if job.command == "transform":
        return _cmd_transform(job)
    if job.command == "classical-check":
        return _cmd_classical_check(job)
    if job.command == "identities":
        return _cmd_identities(job)
    if job.command == "plot-data":
        raise ValueError("plot-data emits CSV; handled before dispatch")
    raise ValueError(f"unknown command {job.command!r}")


def _cmd_polys(job: JobSpec):
    source, g = _measure_and_gram(job, job.n)
    fam = biorth.build_families(g)
    out = {
        "command": "polys",
        "mode": job.mode,
        "n": job.n,
        "measure": job.spec,
        "hankel": fam.hankel,
        "h": fmt_list(fam.h),
        "p1": [fmt_list(fam.poly1(k)) for k in range(fam.size)],
        "p2": [fmt_list(fam.poly2(k)) for k in range(fam.size)],
    }
    if fam.hankel and fam.size >= 2:
        b, a = biorth.three_term_coeffs(fam)
        out["jacobi_band"] = {"a": fmt_list(a), "b": fmt_list(b[1:])}
    if isinstance(source, gram.ClassicalWeight):
        out["mass"] = source.mass()
    return out


def _cmd_quadrature(job: JobSpec):
    source, g = _measure_and_gram(job, job.k + 1)
    fam = biorth.build_families(g)
    rule = quad.gauss_rule(fam, job.k)
    ms = gram.moments(source, 2 * job.k - 1)
    out = {
        "command": "quadrature",
        "mode": job.mode,
        "k": job.k,
        "measure": job.spec,
        "nodes": list(rule.nodes),
        "weights": list(rule.weights),
        "method": rule.method,
        "exactness": quad.exactness_check(rule, ms),
    }
    if isinstance(source, gram.ClassicalWeight):
        out["mass"] = source.mass()
    return out


def _parse_roots(values):
    roots = [parse_scalar(v) for v in values]
    if not roots:
        raise ValueError("transform needs at least one root")
    grouped = []
    for r in roots:
        if grouped and grouped[-1][0] == r:
            grouped[-1][1] += 1
        else:
            grouped.append([r, 1])
    return transforms.PolyPerturbation(tuple((r, m) for r, m in grouped))


def _cmd_transform(job: JobSpec):
    kind = job.transform
    out = {"command": "transform", "transform": kind, "mode": job.mode, "measure": job.spec, "n": job.n}
    if kind == "christoffel":
        w = _parse_roots(job.roots)
        source, g = _measure_and_gram(job, job.n + w.degree + 1)
        fam = biorth.build_families(g)
        hat = biorth.build_families(transforms.christoffel_gram(g, w))
        p1s, p2s, hs, agree = [], [], [], True
        for deg in range(job.n):
            p1, h, p2 = transforms.christoffel_polys_general(fam, w, deg)
            p1s.append(fmt_list(p1))
            p2s.append(fmt_list(p2))
            hs.append(fmt(h))
            agree = agree and _rows_match(p1, hat.poly1(deg)) and _rows_match(p2, hat.poly2(deg))
            agree = agree and _residual(h, hat.h[deg]) == 0 if job.mode == "exact" else agree
        out.update(
            {"roots": fmt_list([r for r in _flat_roots(w)]), "p1": p1s, "p2": p2s, "h": hs,
             "matches_factorization": bool(agree)}
        )
        return out
    if kind == "geronimus":
        w = _parse_roots(job.g_roots)
        xis = _padded_xis(job, len(w.roots))
        source, g = _measure_and_gram(job, job.n + 1)
        fam = biorth.build_families(g)
        if len(w.roots) == 1 and w.roots[0][1] == 1:
            return _geronimus_single(job, source, g, fam, w.roots[0][0], xis[0], out)
        free = _free_data(job, source, w, xis)
        res = transforms.linear_spectral(fam, transforms.PolyPerturbation(()), w, free, job.n)
        out.update(_family_payload(res.family))
        return out
    if kind == "linear-spectral":
        wc = _parse_roots(job.roots)
        wg = _parse_roots(job.g_roots)
        xis = _padded_xis(job, len(wg.roots))
        need = job.n + (wc.degree + 1) // 2 + 1
        source, g = _measure_and_gram(job, need)
        fam = biorth.build_families(g)
        free = _free_data(job, source, wg, xis)
        res = transforms.linear_spectral(fam, wc, wg, free, job.n)
        out.update(_family_payload(res.family))
        out["moments"] = fmt_list(res.moments[: 2 * job.n - 1])
        return out
    raise ValueError(f"unknown transform {kind!r}")


def _flat_roots(w):
    out = []
    for r, m in w.roots:
        out.extend([r] * m)
    return out


def _padded_xis(job: JobSpec, count: int):
    xis = [parse_scalar(v) for v in job.xis]
    if len(xis) > count:
        raise ValueError("more xi values than Geronimus roots")
    return xis + [0] * (count - len(xis))


def _free_data(job: JobSpec, source, wg, xis):
    if isinstance(source, gram.DiscreteMeasure):
        return transforms.GeronimusFreeData.for_measure(source, wg, xis)
    c0s = [float(v) for v in job.c0s]
    if len(c0s) != len(wg.roots):
        raise ValueError("continuous measures need one --c0 per Geronimus root")
    return transforms.GeronimusFreeData(
        tuple((q, xi, c0) for (q, _), xi, c0 in zip(wg.roots, xis, c0s))
    )


def _geronimus_single(job, source, g, fam, a, xi, out):
    if isinstance(source, gram.DiscreteMeasure):
        c1 = biorth.second_kind_values(fam, source, a)
        first_col = transforms.geronimus_first_column(source, a, xi, fam.size)
    else:
        c0s = [float(v) for v in job.c0s]
        if len(c0s) != 1:
            raise ValueError("continuous measures need exactly one --c0")
        ms = [g.rows[0][j] for j in range(fam.size)] + [
            g.rows[i][fam.size - 1] for i in range(1, fam.size)
        ]
        c = gram.cauchy_from_c0([float(v) for v in ms], float(a), c0s[0], fam.size - 1)
        c1 = biorth.second_kind_from_cauchy(fam, a, c)
        first_col = [-c[i] + float(xi) * float(a) ** i for i in range(fam.size)]
    xp = transforms.xi_pairing_single_mass(fam, a, xi)
    check = biorth.build_families(transforms.geronimus_gram(g, a, first_col))
    p1s, p2s, hs, agree = [], [], [], True
    for deg in range(job.n):
        p1, h, p2 = transforms.geronimus_polys_deg1(fam, c1, xp, deg)
        p1s.append(fmt_list(p1))
        p2s.append(fmt_list(p2))
        hs.append(fmt(h))
        if job.mode == "exact" and not isinstance(h, float):
            agree = agree and _rows_match(p1, check.poly1(deg)) and _rows_match(p2, check.poly2(deg))
            agree = agree and h == check.h[deg]
    out.update({"root": fmt(a), "xi": fmt(xi), "p1": p1s, "p2": p2s, "h": hs,
                "matches_factorization": bool(agree)})
    return out


def _rows_match(p, q, tol=1e-9):
    n = max(len(p), len(q))
    for i in range(n):
        a = p[i] if i < len(p) else 0
        b = q[i] if i < len(q) else 0
        d = a - b
        if isinstance(d, float):
            if abs(d) > tol:
                return False
        elif d != 0:
            return False
    return True


def _family_payload(fam):
    return {
        "h": fmt_list(fam.h),
        "p1": [fmt_list(fam.poly1(k)) for k in range(fam.size)],
        "p2": [fmt_list(fam.poly2(k)) for k in range(fam.size)],
        "hankel": fam.hankel,
    }


def _cmd_classical_check(job: JobSpec):
    source = gram.parse_measure_spec(job.spec)
    if not isinstance(source, gram.ClassicalWeight):
        raise ValueError("classical-check needs a classical measure spec")
    pd = classical.pearson_data(source)
    n = job.n
    fam = biorth.family_from_measure(source, n + 2)
    checks = []

    sub_ok = all(
        classical.classical_subdiagonal(pd, m) == fam.s1.rows[m + 1][m] for m in range(n)
    )
    checks.append({"name": "subdiagonal_closed_form", "passed": bool(sub_ok)})

    t = classical.diff_operator_matrix(pd, n + 2)
    conj = fam.s1 @ t @ unit_lower_inverse(fam.s1)
    diag_ok = True
    for i in range(n + 2):
        for j in range(n + 2):
            want = classical.classical_eigenvalue(pd, i) if i == j else 0
            if conj.rows[i][j] != want:
                diag_ok = False
    checks.append({"name": "operator_diagonalization", "passed": bool(diag_ok)})

    raised = gram.raise_parameters(source)
    fam_up = biorth.family_from_measure(raised, n + 2)
    ms = gram.moments_classical(source, 2)
    kappa = pd.a * ms[2] + pd.b * ms[1] + pd.c
    ratio_ok = True
    for m in range(1, n + 1):
        lead = pd.A + (m - 1) * pd.a
        ratio_ok = ratio_ok and fam.h[m] * lead == -m * kappa * fam_up.h[m - 1]
    checks.append({"name": "norm_ratio_parameter_shift", "passed": bool(ratio_ok)})

    out = {
        "command": "classical-check",
        "mode": job.mode,
        "measure": job.spec,
        "n": n,
        "family": source.family,
        "eigenvalues": fmt_list([classical.classical_eigenvalue(pd, m) for m in range(n + 1)]),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
    return out


def _random_rationals(rng, count, den_max=12, num_max=20):
    out = []
    while len(out) < count:
        q = Fraction(rng.randint(-num_max, num_max), rng.randint(1, den_max))
        out.append(q)
    return out


def _cmd_identities(job: JobSpec):
    source, g = _measure_and_gram(job, job.n)
    fam = biorth.build_families(g)
    rng = random.Random(job.seed)
    checks = []

    prod = fam.s1 @ fam.gram @ fam.s2.transpose()
    res = max(
        abs(float(prod.rows[i][j]) - (float(fam.h[i]) if i == j else 0.0))
        for i in range(fam.size)
        for j in range(fam.size)
    )
    checks.append(_record("biorthogonality", res))

    pts = _random_rationals(rng, 20)
    worst = 0
    for x, y in zip(pts[:10], pts[10:]):
        diff = _residual(
            biorth.cd_kernel(fam, fam.size - 1, x, y), biorth.abc_kernel(g, fam.size, x, y)
        )
        worst = max(worst, float(diff))
    checks.append(_record("abc_equals_cd", worst))

    if fam.size >= 2:
        jm = biorth.spectral_matrix(fam, 1).j
        worst = 0.0
        for k in range(1, jm.shape[0] + 1):
            cp = char_poly(jm.leading(k))
            pk = fam.poly1(k)
            worst = max(
                worst, max(abs(float(a) - float(b)) for a, b in zip(cp, pk))
            )
        checks.append(_record("roots_are_truncation_eigenvalues", worst))

    if fam.hankel:
        ms = [fam.gram.rows[0][j] for j in range(fam.size)]
        worst = 0.0
        for j in range(min(2 * (fam.size - 1) - 1, len(ms) - 1) + 1):
            worst = max(
                worst, abs(float(biorth.moment_from_spectral(fam, j)) - float(ms[j]))
            )
        checks.append(_record("moment_identity", worst))

        n = fam.size - 2
        if n >= 0:
            worst = 0.0
            for x, y in zip(pts[:10], pts[10:]):
                lhs = (x - y) * biorth.cd_kernel(fam, n, x, y)
                rhs = poly_eval(fam.poly1(n + 1), x) * biorth.eval_poly(fam, 2, n, y) - poly_eval(
                    fam.poly1(n), x
                ) * biorth.eval_poly(fam, 2, n + 1, y)
                worst = max(worst, float(abs(lhs - exact_ratio(rhs, fam.h[n]))))
            checks.append(_record("cd_formula", worst))

    if isinstance(source, gram.DiscreteMeasure):
        a = next(
            p for p in _random_rationals(rng, 50, 7, 9) if p not in set(source.support())
        )
        c1 = biorth.second_kind_values(fam, source, a)
        n = fam.size - 2
        if n >= 0:
            worst = 0.0
            for y in pts[:10]:
                lhs = (a - y) * biorth.mixed_cd_kernel(fam, c1, n, y)
                rhs = (
                    biorth.eval_poly(fam, 2, n, y) * c1.values1[n + 1]
                    - biorth.eval_poly(fam, 2, n + 1, y) * c1.values1[n]
                )
                rhs = exact_ratio(rhs, fam.h[n]) + 1
                worst = max(worst, float(abs(lhs - rhs)))
            checks.append(_record("mixed_cd_formula", worst))

    return {
        "command": "identities",
        "mode": job.mode,
        "measure": job.spec,
        "n": job.n,
        "seed": job.seed,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def exact_ratio(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    return Fraction(a) / Fraction(b)


def _record(name, residual, tol=1e-9):
    return {"name": name, "passed": bool(residual <= tol), "residual": float(residual)}


def emit_plot_data(fam, lo: float, hi: float, samples: int) -> str:
    """CSV with columns x, P_0(x), ..., P_{n-1}(x) on a uniform grid."""
    if samples < 2:
        raise ValueError("need at least two samples")
    lines = ["x," + ",".join(f"P{k}" for k in range(fam.size))]
    for i in range(samples):
        x = lo + (hi - lo) * i / (samples - 1)
        row = [f"{x!r}"] + [f"{float(poly_eval(fam.poly1(k), x))!r}" for k in range(fam.size)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="opgb", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--spec", required=True, help="measure spec JSON file")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--transform", choices=("christoffel", "geronimus", "linear-spectral"),
                   default="christoffel")
    p.add_argument("--root", action="append", default=[], help="Christoffel root (repeatable)")
    p.add_argument("--g-root", action="append", default=[], help="Geronimus root (repeatable)")
    p.add_argument("--xi", action="append", default=[], help="free mass per Geronimus root")
    p.add_argument("--c0", action="append", default=[],
                   help="Markov value c_0(root) for continuous measures")
    p.add_argument("--range", default="-1:1", help="plot-data x range lo:hi")
    p.add_argument("--samples", type=int, default=20)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.spec) as fh:
            spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        doc = canonical_json({"schema": "1", "error": "schema", "message": str(exc)})
        _write(args.out, doc)
        return 1
    try:
        lo, hi = (float(v) for v in args.range.split(":"))
    except ValueError:
        _write(args.out, canonical_json({"schema": "1", "error": "schema", "message": "bad range"}))
        return 1
    job = JobSpec(
        command=args.command,
        spec=spec,
        n=args.n,
        k=args.k,
        mode=args.mode,
        seed=args.seed,
        transform=args.transform,
        roots=tuple(args.root),
        g_roots=tuple(args.g_root),
        xis=tuple(args.xi),
        c0s=tuple(args.c0),
        plot_range=(lo, hi),
        samples=args.samples,
    )
    if job.command == "plot-data":
        try:
            source, g = _measure_and_gram(job, job.n + 1)
            fam = biorth.build_families(_as_float_matrix(g))
            _write(args.out, emit_plot_data(fam, lo, hi, job.samples))
            return 0
        except ADMISSIBILITY_ERRORS as exc:
            _write(args.out, canonical_json({"schema": "1", "error": type(exc).__name__,
                                             "message": str(exc)}))
            return 2
        except (UnsupportedMeasure, ValueError) as exc:
            _write(args.out, canonical_json({"schema": "1", "error": "schema", "message": str(exc)}))
            return 1
    payload, code = run(job)
    _write(args.out, canonical_json(payload))
    return code


def _write(path, text):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
