"""Command line front end.

One executable, subcommand per task: multiplication-table checks, products,
kernels and orthogonal decompositions, zero-product certificates, slice-unit
geometry, convergence radii and domain membership, series evaluation, grid
scans, and cross-section figure export (CSV always, SVG on request).

Exit codes: 0 success / affirmative answer, 1 failed verification or negative
answer to a yes-no query, 2 argument or parse errors.  All floating output
goes through 12-significant-digit formatting so repeated runs diff clean.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .algebra import (
    CDElement,
    format_element,
    format_real,
    parse_element,
    table_csv,
    verify_table,
)
from .zerodiv import (
    kernel_of_left_mult,
    ortho_decompose,
    zero_product_characterization,
)
from .slices import (
    SliceUnit,
    cker_curve_point,
    cker_membership,
    find_companion,
    hyper_solution,
    iota_frame,
    is_hyper_solution,
    from_polar,
    psi,
    wpoint,
    wpoint_from,
)
from .series import (
    Membership,
    convergence_scan,
    demo_sequence,
    domain_contains,
    domain_report,
    evaluate_series,
    seq_from_json,
)

DEFAULT_SEED = 20210


def _fmt(x: float) -> str:
    return format_real(float(x))


def _coeff_list(vec) -> list[float]:
    return [float(v) for v in np.asarray(vec, dtype=float)]


def _load_seq(args):
    """Sequence from --seq (path or inline JSON); bundled demo otherwise."""
    spec = getattr(args, "seq", None)
    if spec is None:
        return demo_sequence()
    text = spec
    if not spec.lstrip().startswith("{"):
        with open(spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    return seq_from_json(text)


def _outdir() -> str:
    return os.environ.get("SEDENION_OUTDIR", ".")


def _emit(args, text_lines, payload) -> None:
    if getattr(args, "format", "csv") == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def cmd_table(args) -> int:
    if args.verify:
        matches, total = verify_table()
        print(f"{matches}/{total} entries match")
        return 0 if matches == total else 1
    if args.format == "json":
        rows = [line.split(",") for line in table_csv().splitlines()]
        print(json.dumps(rows))
    else:
        print(table_csv(), end="")
    return 0


def cmd_mul(args) -> int:
    prod = parse_element(args.a) * parse_element(args.b)
    _emit(args, [format_element(prod)],
          {"text": format_element(prod), "coeffs": _coeff_list(prod.promote(4).coeffs)})
    return 0


def cmd_kernel(args) -> int:
    ker = kernel_of_left_mult(parse_element(args.s))
    lines = [f"dim={ker.dim}"]
    for v in ker.vectors():
        c = v.promote(4).coeffs.copy()
        c[np.abs(c) < 1e-12] = 0.0  # drop SVD dust from the text rendering
        lines.append(format_element(CDElement(c)))
    _emit(args, lines, {"dim": ker.dim,
                        "basis": [_coeff_list(row) for row in ker.basis]})
    return 0


def cmd_decompose(args) -> int:
    dec = ortho_decompose(parse_element(args.x), parse_element(args.p))
    lines = []
    for name in ("o_part", "ker_part", "kerc_part"):
        c = getattr(dec, name).promote(4).coeffs.copy()
        c[np.abs(c) < 1e-12] = 0.0  # projector dust, display only
        lines.append(f"{name}={format_element(CDElement(c))}")
    _emit(args, lines, {k: _coeff_list(getattr(dec, k).promote(4).coeffs)
                        for k in ("o_part", "ker_part", "kerc_part")})
    return 0


def _octonion_halves(x: CDElement) -> tuple[CDElement, CDElement]:
    v = x.promote(4).coeffs
    return CDElement(v[:8].copy()), CDElement(v[8:].copy())


def cmd_zd_check(args) -> int:
    a, b = _octonion_halves(parse_element(args.x))
    c, d = _octonion_halves(parse_element(args.y))
    is_zero, cert = zero_product_characterization(a, b, c, d)
    yn = lambda f: "yes" if f else "no"
    formula = "none" if cert.d_formula is None else format_element(cert.d_formula)
    lines = [f"product_zero={yn(is_zero)}",
             f"product_norm={_fmt(cert.product_norm)}",
             f"norms_match={yn(cert.norms_match)}",
             f"triple_special={yn(cert.triple_special)}",
             f"d_matches_formula={yn(cert.d_matches_formula)}",
             f"d_formula={formula}"]
    _emit(args, lines, {"product_zero": is_zero,
                        "product_norm": cert.product_norm,
                        "norms_match": cert.norms_match,
                        "triple_special": cert.triple_special,
                        "d_matches_formula": cert.d_matches_formula,
                        "d_formula": formula})
    return 0 if is_zero else 1


def cmd_hyper(args) -> int:
    j1, j2 = SliceUnit(args.j1), SliceUnit(args.j2)
    if not is_hyper_solution(j1, j2):
        _emit(args, ["hyper=no"], {"hyper": False})
        return 1
    i1, i2, alpha = iota_frame(j1, j2)
    lines = [f"hyper=yes alpha={_fmt(alpha)} "
             f"i1={format_element(i1)} i2={format_element(i2)}"]
    _emit(args, lines, {"hyper": True, "alpha": alpha,
                        "i1": format_element(i1), "i2": format_element(i2)})
    return 0


def cmd_polar(args) -> int:
    if args.alpha is not None:
        if args.theta is None:
            raise ValueError("--alpha needs --theta")
        if args.frame is not None:
            names = args.frame.split(",")
            if len(names) != 2:
                raise ValueError("--frame wants two comma-separated units")
            s = psi(args.alpha, args.theta,
                    (parse_element(names[0]), parse_element(names[1])))
        elif args.jmath is not None:
            s = from_polar(args.alpha, args.theta, parse_element(args.jmath))
        else:
            raise ValueError("construction needs --frame or --jmath")
        _emit(args, [format_element(s.s)],
              {"s": format_element(s.s), "coeffs": _coeff_list(s.s.coeffs)})
        return 0
    if args.s is None:
        raise ValueError("give a slice unit, or --alpha/--theta to construct one")
    u = SliceUnit(args.s)
    lines = [f"alpha={_fmt(u.alpha)} theta={_fmt(u.theta)} "
             f"jmath={format_element(u.jmath)}"]
    _emit(args, lines, {"alpha": u.alpha, "theta": u.theta,
                        "jmath": format_element(u.jmath)})
    return 0


def cmd_cker(args) -> int:
    j1, j2 = SliceUnit(args.j1), SliceUnit(args.j2)
    if args.curve is not None:
        n = args.curve
        if n < 1:
            raise ValueError("--curve wants a positive sample count")
        lines = ["theta," + ",".join(f"c{k}" for k in range(16))]
        for i in range(n):
            theta = math.pi * i / n
            pt = cker_curve_point(j1, j2, theta)
            row = ",".join(_fmt(c) for c in pt.s.coeffs)
            lines.append(f"{_fmt(theta)},{row}")
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(f"wrote {args.out}")
        else:
            print(text, end="")
        return 0
    if args.k is None:
        raise ValueError("give a candidate unit K, or --curve N to sample")
    member = cker_membership(SliceUnit(args.k), j1, j2)
    _emit(args, [f"member={'yes' if member else 'no'}"], {"member": member})
    return 0 if member else 1


def cmd_radii(args) -> int:
    p = wpoint(args.center)
    a = _load_seq(args)
    rep = domain_report(p, a)
    witness = format_element(rep.witness.s) if rep.witness else "none"
    lines = [f"R_a={_fmt(rep.r_a)} R_a^p={_fmt(rep.r_ap)} witness={witness}",
             f"case={rep.case.value}" + (" approximate=yes" if rep.approximate else "")]
    _emit(args, lines, {"R_a": rep.r_a, "R_ap": rep.r_ap, "witness": witness,
                        "case": rep.case.value, "approximate": rep.approximate})
    return 0


def cmd_contains(args) -> int:
    p = wpoint(args.center)
    a = _load_seq(args)
    q = wpoint(args.q)
    m = domain_contains(q, p, a, band=args.band)
    _emit(args, [m.value], {"membership": m.value})
    return 0


def cmd_eval(args) -> int:
    p = wpoint(args.center)
    a = _load_seq(args)
    q = wpoint(args.q)
    rep = evaluate_series(q, p, a, max_terms=args.max_terms, tol=args.tol)
    lines = [f"verdict={rep.verdict.value} terms={rep.terms_used} "
             f"tail_norm={_fmt(rep.tail_norm)}",
             f"value={format_element(rep.partial_sum)}"]
    _emit(args, lines, {"verdict": rep.verdict.value, "terms": rep.terms_used,
                        "tail_norm": rep.tail_norm,
                        "value": format_element(rep.partial_sum),
                        "coeffs": _coeff_list(rep.partial_sum.promote(4).coeffs)})
    return 0


def _default_slices(p, a) -> list[tuple[str, SliceUnit]]:
    """Center axis, a kernel-curve witness, its negative, and a generic unit."""
    rep = domain_report(p, a)
    axis = p.axis
    out = [(format_element(axis.s), axis)]
    if rep.witness is None:
        return out
    k = rep.witness
    out.append((format_element(k.s), k))
    out.append((format_element((-k).s), -k))
    for name in ("e3", "e2", "e5", "e4", "e6"):
        cand = SliceUnit(name)
        taken = any(np.allclose(cand.s.coeffs, s.s.coeffs) or
                    np.allclose(cand.s.coeffs, -s.s.coeffs) for _, s in out)
        if not taken and not cker_membership(cand, axis, k):
            out.append((name, cand))
            break
    return out


def _parse_slices(arg: str) -> list[tuple[str, SliceUnit]]:
    return [(name, SliceUnit(name)) for name in arg.split(",") if name]


def cmd_scan(args) -> int:
    p = wpoint(args.center)
    a = _load_seq(args)
    slices = _parse_slices(args.slices) if args.slices else _default_slices(p, a)
    nsteps = int(round((args.rmax - args.rmin) / args.rstep))
    radial = [round(args.rmin + k * args.rstep, 12) for k in range(nsteps + 1)]
    radial = [r for r in radial if r > 0]
    angular = [float(t) for t in args.thetas.split(",")] if args.thetas \
        else [math.pi / 2]
    lines = ["slice,theta,re,im,predicted,empirical,terms_used,tail_norm"]
    scored = agreed = 0
    summaries = []
    for name, sl in slices:
        res = convergence_scan(p, a, sl, radial, angular,
                               max_terms=args.max_terms, tol=args.tol,
                               band=args.band)
        for r in res.rows:
            lines.append(f"{name},{_fmt(r.theta)},{_fmt(r.re)},{_fmt(r.im)},"
                         f"{r.predicted.value},{r.empirical.value},"
                         f"{r.terms_used},{_fmt(r.tail_norm)}")
        scored += res.scored
        agreed += res.agreed
        summaries.append(f"slice={name} scored={res.scored} agreed={res.agreed} "
                         f"agreement={_fmt(res.agreement)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        path = args.out if os.path.isabs(args.out) \
            else os.path.join(_outdir(), args.out)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {path}")
    else:
        print(text, end="")
    for s in summaries:
        print(s)
    rate = 1.0 if scored == 0 else agreed / scored
    print(f"total scored={scored} agreed={agreed} agreement={_fmt(rate)}")
    return 0 if rate == 1.0 else 1


# ---------------------------------------------------------------------------
# figure export
# ---------------------------------------------------------------------------


def _figure_csv(p, a, sl: SliceUnit, n: int, rmax: float, band: float) -> str:
    lines = ["theta,r,re,im,class"]
    for i in range(n):
        theta = math.pi * i / max(1, n - 1)
        c, s = math.cos(theta), math.sin(theta)
        for k in range(1, n + 1):
            r = rmax * k / n
            q = wpoint_from(r * c, r * s, sl)
            m = domain_contains(q, p, a, band=band)
            lines.append(f"{_fmt(theta)},{_fmt(r)},{_fmt(r * c)},{_fmt(r * s)},"
                         f"{m.value}")
    return "\n".join(lines) + "\n"


def _region_columns(r1: float, r2: float, xs) -> list[tuple[float, float, float]]:
    """Columns (x, ylo, yhi) of {y>=0} cut with |z-i|<r1 and |z+i|<r2."""
    cols = []
    for x in xs:
        if r1 <= abs(x) or not math.isfinite(r1):
            continue
        s1 = math.sqrt(r1 * r1 - x * x)
        lo1, hi1 = 1.0 - s1, 1.0 + s1
        if math.isfinite(r2):
            if r2 <= abs(x):
                continue
            s2 = math.sqrt(r2 * r2 - x * x)
            lo2, hi2 = -1.0 - s2, -1.0 + s2
        else:
            lo2, hi2 = -math.inf, math.inf
        lo = max(0.0, lo1, lo2)
        hi = min(hi1, hi2)
        if hi > lo:
            cols.append((x, lo, hi))
    return cols


def _panel_svg(ox: float, oy: float, size: float, label: str,
               r1: float, r2: float, center_plane: bool) -> list[str]:
    """One panel: region fill plus dashed radius circles, math y up."""
    span = 4.6
    scale = size / (2 * span)

    def sx(x):
        return ox + (x + span) * scale

    def sy(y):
        return oy + (span - y) * scale

    parts = [f'<rect x="{ox:.2f}" y="{oy:.2f}" width="{size:.2f}" '
             f'height="{size:.2f}" fill="white" stroke="#444" stroke-width="1"/>']
    parts.append(f'<line x1="{sx(-span):.2f}" y1="{sy(0):.2f}" x2="{sx(span):.2f}" '
                 f'y2="{sy(0):.2f}" stroke="#bbb" stroke-width="0.7"/>')
    parts.append(f'<line x1="{sx(0):.2f}" y1="{sy(-span):.2f}" x2="{sx(0):.2f}" '
                 f'y2="{sy(span):.2f}" stroke="#bbb" stroke-width="0.7"/>')
    fill = "#7aa6d877"
    if center_plane:
        parts.append(f'<circle cx="{sx(0):.2f}" cy="{sy(1):.2f}" '
                     f'r="{r1 * scale:.2f}" fill="{fill}" stroke="none"/>')
    else:
        xs = [(-span) + 2 * span * k / 800 for k in range(801)]
        cols = _region_columns(r1, r2, xs)
        if cols:
            upper = [(x, hi) for x, _, hi in cols]
            lower = [(x, lo) for x, lo, _ in cols][::-1]
            for mirror in (1.0, -1.0):
                pts = " ".join(f"{sx(x):.2f},{sy(mirror * y):.2f}"
                               for x, y in upper + lower)
                parts.append(f'<polygon points="{pts}" fill="{fill}" '
                             f'stroke="none"/>')
    for cy, rr in ((1.0, r1), (-1.0, r2)):
        if math.isfinite(rr):
            parts.append(f'<circle cx="{sx(0):.2f}" cy="{sy(cy):.2f}" '
                         f'r="{rr * scale:.2f}" fill="none" stroke="#335" '
                         f'stroke-width="1" stroke-dasharray="4 3"/>')
    parts.append(f'<text x="{ox + 6:.2f}" y="{oy + 16:.2f}" '
                 f'font-family="monospace" font-size="12">{label}</text>')
    return parts


def _figure_svg(p, a, slices) -> str:
    from .series import _radius_RapJ_cached, radius_Ra
    rep = domain_report(p, a)
    size, gap = 300.0, 14.0
    cols = min(2, len(slices)) if len(slices) > 1 else 1
    rows = (len(slices) + cols - 1) // cols
    w = cols * size + (cols + 1) * gap
    h = rows * size + (rows + 1) * gap
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" '
             f'height="{h:.0f}" viewBox="0 0 {w:.0f} {h:.0f}">']
    same_axis = lambda u, v: (np.max(np.abs(u.s.coeffs - v.s.coeffs)) <= 1e-9
                              or np.max(np.abs(u.s.coeffs + v.s.coeffs)) <= 1e-9)
    for idx, (name, sl) in enumerate(slices):
        ox = gap + (idx % cols) * (size + gap)
        oy = gap + (idx // cols) * (size + gap)
        center_plane = p.is_real or same_axis(sl, p.axis)
        if center_plane:
            r1, r2 = rep.r_a, math.inf
        else:
            r1, r2 = rep.r_a, _radius_RapJ_cached(a, p, sl)
        parts += _panel_svg(ox, oy, size, f"slice {name}", r1, r2, center_plane)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_figure(args) -> int:
    p = wpoint(args.center)
    a = _load_seq(args)
    slices = _parse_slices(args.slices) if args.slices else _default_slices(p, a)
    outdir = args.out if args.out else _outdir()
    os.makedirs(outdir, exist_ok=True)
    written = []
    for name, sl in slices:
        safe = name.replace("+", "p").replace("-", "m").replace(".", "_")
        path = os.path.join(outdir, f"figure_{safe}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_figure_csv(p, a, sl, args.n, args.rmax, args.band))
        written.append(path)
    if args.format == "svg":
        path = os.path.join(outdir, "figure.svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_figure_svg(p, a, slices))
        written.append(path)
    for path in written:
        print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_format(sp, choices=("csv", "json")):
    sp.add_argument("--format", choices=choices, default="csv",
                    help="output format (default csv/plain text)")


def _add_seq(sp):
    sp.add_argument("--center", default="e1", help="series center, element text")
    sp.add_argument("--seq", help="coefficient sequence: JSON file path or inline JSON")
    sp.add_argument("--demo", action="store_true",
                    help="use the bundled two-ratio example sequence")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sedenion",
        description="Sedenion arithmetic, zero-divisor geometry, and "
                    "star-series convergence domains.")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED,
                    help="seed for any randomized helpers (fixed default)")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("table", help="print or verify the multiplication table")
    sp.add_argument("--verify", action="store_true",
                    help="check the generated table against the embedded fixture")
    _add_format(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("mul", help="multiply two elements")
    sp.add_argument("a")
    sp.add_argument("b")
    _add_format(sp)
    sp.set_defaults(func=cmd_mul)

    sp = sub.add_parser("kernel", help="kernel of left multiplication by s")
    sp.add_argument("s")
    _add_format(sp)
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("decompose",
                        help="orthogonal decomposition of x along a zero divisor p")
    sp.add_argument("x")
    sp.add_argument("p")
    _add_format(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("zd-check",
                        help="zero-product certificate for two sedenions")
    sp.add_argument("x")
    sp.add_argument("y")
    _add_format(sp)
    sp.set_defaults(func=cmd_zd_check)

    sp = sub.add_parser("hyper", help="test a pair of slice units for a "
                                      "nontrivial common kernel")
    sp.add_argument("j1")
    sp.add_argument("j2")
    _add_format(sp)
    sp.set_defaults(func=cmd_hyper)

    sp = sub.add_parser("polar", help="polar data of a slice unit, or build one")
    sp.add_argument("s", nargs="?", help="slice unit to analyze")
    sp.add_argument("--alpha", type=float, help="polar angle for construction")
    sp.add_argument("--theta", type=float, help="frame angle for construction")
    sp.add_argument("--frame", help="two comma-separated imaginary octonion units")
    sp.add_argument("--jmath", help="imaginary octonion unit for construction")
    _add_format(sp)
    sp.set_defaults(func=cmd_polar)

    sp = sub.add_parser("cker", help="kernel-curve membership or curve samples")
    sp.add_argument("j1")
    sp.add_argument("j2")
    sp.add_argument("k", nargs="?", help="candidate slice unit")
    sp.add_argument("--curve", type=int, metavar="N",
                    help="emit N curve samples as CSV instead")
    sp.add_argument("--out", help="write CSV here instead of stdout")
    _add_format(sp)
    sp.set_defaults(func=cmd_cker)

    sp = sub.add_parser("radii", help="convergence radii of a series")
    _add_seq(sp)
    _add_format(sp)
    sp.set_defaults(func=cmd_radii)

    sp = sub.add_parser("contains", help="classify a point against the domain")
    _add_seq(sp)
    sp.add_argument("q", help="query point, element text")
    sp.add_argument("--band", type=float, default=1e-9,
                    help="boundary half-width (default 1e-9)")
    _add_format(sp)
    sp.set_defaults(func=cmd_contains)

    sp = sub.add_parser("eval", help="partial sums with a convergence verdict")
    _add_seq(sp)
    sp.add_argument("q", help="query point, element text")
    sp.add_argument("--max-terms", type=int, default=200)
    sp.add_argument("--tol", type=float, default=1e-8)
    _add_format(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("scan", help="predicted vs empirical convergence sweep")
    _add_seq(sp)
    sp.add_argument("--slices", help="comma-separated slice units "
                                     "(default: four representative ones)")
    sp.add_argument("--rmin", type=float, default=0.2)
    sp.add_argument("--rmax", type=float, default=4.0)
    sp.add_argument("--rstep", type=float, default=0.2)
    sp.add_argument("--thetas", help="comma-separated angles (default pi/2)")
    sp.add_argument("--max-terms", type=int, default=400)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--band", type=float, default=0.05,
                    help="exclusion half-width around the radii")
    sp.add_argument("--out", help="write CSV to this file (under the output dir)")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("figure", help="cross-section region CSVs and SVG panels")
    _add_seq(sp)
    sp.add_argument("--slices", help="comma-separated slice units "
                                     "(default: four representative ones)")
    sp.add_argument("--n", type=int, default=100, help="polar grid size per axis")
    sp.add_argument("--rmax", type=float, default=4.0)
    sp.add_argument("--band", type=float, default=1e-9)
    sp.add_argument("--out", help="output directory (default: SEDENION_OUTDIR or .)")
    _add_format(sp, choices=("csv", "svg"))
    sp.set_defaults(func=cmd_figure)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
