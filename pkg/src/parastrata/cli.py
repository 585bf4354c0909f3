"""Command-line frontend: JSON in, deterministic JSON out.

Subcommands: dim, generic, strata, codim, pushforward, descend,
flagcoh.  Input arrives as a JSON document on stdin or via --input;
reports go to stdout or --output.  Exit codes: 0 success, 1 internal
error, 2 validation error (message on stderr, nothing on stdout).
Rationals are serialized as "numerator/denominator" strings; output
bytes are identical across runs for identical inputs.
"""

from __future__ import annotations

import itertools
import json
import re
import sys
from fractions import Fraction

from . import cover as cover_mod
from . import eigenflag as ef
from . import flagcoh as fc
from . import parabolic as pb
from . import strata as st
from .exact import cyclotomic_field

VERSION = "parastrata/1.0"

SUBCOMMANDS = ("dim", "generic", "strata", "codim", "pushforward", "descend", "flagcoh")

_FRACTION_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class ValidationError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class UsageError(ValueError):
    pass


# --- input validation helpers ----------------------------------------------


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def expect_object(x, path: str) -> dict:
    if not isinstance(x, dict):
        raise ValidationError(path, "expected an object")
    return x


def expect_array(x, path: str) -> list:
    if not isinstance(x, list):
        raise ValidationError(path, "expected an array")
    return x


def expect_int(x, path: str, minimum: int | None = None) -> int:
    if not _is_int(x):
        raise ValidationError(path, "expected an integer")
    if minimum is not None and x < minimum:
        raise ValidationError(path, f"expected an integer >= {minimum}")
    return x


def expect_keys(doc: dict, path: str, required: tuple[str, ...], optional: tuple[str, ...] = ()):
    for key in required:
        if key not in doc:
            raise ValidationError(f"{path}.{key}", "missing required field")
    for key in doc:
        if key not in required and key not in optional:
            raise ValidationError(f"{path}.{key}", "unknown field")


def parse_fraction(x, path: str) -> Fraction:
    if _is_int(x):
        return Fraction(x)
    if isinstance(x, str):
        if not _FRACTION_RE.match(x):
            raise ValidationError(path, f"expected a rational string like \"3/4\", got {x!r}")
        return Fraction(x)
    raise ValidationError(path, "expected a rational string (floats are not accepted)")


def frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_point(doc, path: str) -> pb.PointWeights:
    doc = expect_object(doc, path)
    expect_keys(doc, path, ("weights", "mults"))
    ws = expect_array(doc["weights"], f"{path}.weights")
    ms = expect_array(doc["mults"], f"{path}.mults")
    if len(ws) != len(ms):
        raise ValidationError(path, "weights and mults differ in length")
    if not ws:
        raise ValidationError(f"{path}.weights", "at least one weight is required")
    weights = [parse_fraction(w, f"{path}.weights[{i}]") for i, w in enumerate(ws)]
    mults = [expect_int(m, f"{path}.mults[{i}]", minimum=1) for i, m in enumerate(ms)]
    try:
        return pb.PointWeights.of(weights, mults)
    except ValueError as exc:
        raise ValidationError(path, str(exc)) from exc


def parse_point_list(doc, path: str, rank: int | None) -> dict[str, pb.PointWeights]:
    arr = expect_array(doc, path)
    points = {}
    for i, entry in enumerate(arr):
        pw = parse_point(entry, f"{path}[{i}]")
        if rank is not None and pw.total_multiplicity() != rank:
            raise ValidationError(
                f"{path}[{i}].mults", f"multiplicities sum to {pw.total_multiplicity()}, expected rank {rank}"
            )
        points[f"p{i + 1}"] = pw
    return points


def echo_point(pw: pb.PointWeights) -> dict:
    return {
        "weights": [frac_str(w) for w in pw.weights],
        "mults": list(pw.multiplicities),
    }


def echo_points(points: dict[str, pb.PointWeights]) -> list[dict]:
    return [echo_point(points[pid]) for pid in sorted(points)]


def parse_scalar(x, path: str, field):
    """A matrix/vector entry: a rational string, or a coefficient list
    in the power basis of the field."""
    if isinstance(x, list):
        if len(x) > field.degree:
            raise ValidationError(path, f"at most {field.degree} power-basis coefficients allowed")
        coeffs = [parse_fraction(c, f"{path}[{i}]") for i, c in enumerate(x)]
        return field.element(coeffs)
    return field.from_rational(parse_fraction(x, path))


def scalar_json(value) -> object:
    coeffs = value.coeffs
    if value.is_rational():
        return frac_str(value.rational_value())
    return [frac_str(c) for c in coeffs]


def parse_matrix(doc, path: str, field) -> list[list]:
    arr = expect_array(doc, path)
    if not arr:
        raise ValidationError(path, "matrix must be nonempty")
    rows = []
    width = None
    for i, row in enumerate(arr):
        row = expect_array(row, f"{path}[{i}]")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValidationError(f"{path}[{i}]", "ragged matrix")
        rows.append([parse_scalar(v, f"{path}[{i}][{j}]", field) for j, v in enumerate(row)])
    if width == 0:
        raise ValidationError(path, "matrix rows must be nonempty")
    return rows


# --- subcommand handlers ----------------------------------------------------


def cmd_dim(payload) -> tuple[dict, dict]:
    doc = expect_object(payload, "$")
    expect_keys(doc, "$", ("g", "r", "points"))
    g = expect_int(doc["g"], "$.g", minimum=2)
    r = expect_int(doc["r"], "$.r", minimum=1)
    points = parse_point_list(doc["points"], "$.points", r)
    spec = st.ModuliSpec.of(g, r, points)
    echo = {"g": g, "r": r, "points": echo_points(points)}
    return echo, {"dimension": st.moduli_dimension(spec)}


def cmd_generic(payload) -> tuple[dict, dict]:
    doc = expect_object(payload, "$")
    expect_keys(doc, "$", ("rank", "degree", "points"))
    rank = expect_int(doc["rank"], "$.rank", minimum=1)
    degree = expect_int(doc["degree"], "$.degree")
    points = parse_point_list(doc["points"], "$.points", rank)
    datum = pb.ParabolicDatum.of(rank, degree, points)
    witness = pb.genericity_witness(datum)
    echo = {"rank": rank, "degree": degree, "points": echo_points(points)}
    if witness is None:
        return echo, {"generic": True, "witness": None}
    return echo, {
        "generic": False,
        "witness": {
            "sub_rank": witness.sub_rank,
            "sub_degree": witness.sub_degree,
            "sub_multiplicities": {pid: list(vec) for pid, vec in witness.sub_multiplicities},
        },
    }


def _parse_strata_common(payload) -> tuple[dict, st.ModuliSpec, int]:
    doc = expect_object(payload, "$")
    expect_keys(doc, "$", ("g", "r", "d", "points"), optional=("e",))
    g = expect_int(doc["g"], "$.g", minimum=2)
    r = expect_int(doc["r"], "$.r", minimum=1)
    d = expect_int(doc["d"], "$.d", minimum=2)
    e = expect_int(doc.get("e", 0), "$.e")
    if r % d != 0:
        raise ValidationError("$.d", f"cover degree {d} does not divide rank {r}")
    points = parse_point_list(doc["points"], "$.points", r)
    spec = st.ModuliSpec.of(g, r, points, xi_degree=e)
    echo = {"g": g, "r": r, "d": d, "e": e, "points": echo_points(points)}
    return echo, spec, d


def cmd_strata(payload) -> tuple[dict, dict]:
    echo, spec, d = _parse_strata_common(payload)
    q = spec.rank // d
    per_point = []
    num_indices = 1
    num_systems = 1
    for pid, pw in spec.points:
        subs = st.weight_subsets(pw, q)
        indices = []
        count = 0
        for t in itertools.product(subs, repeat=d):
            mats = list(st.enumerate_matrices(t, pw, spec.rank, d))
            count += len(mats)
            indices.append(
                {
                    "subsets": [[frac_str(pw.weights[k]) for k in sub] for sub in t],
                    "matrices": [
                        {
                            "entries": [list(row) for row in mat.entries],
                            "flag_term": sum(
                                st.flag_dimension([v for v in row if v]) if any(row) else 0
                                for row in mat.entries
                            ),
                        }
                        for mat in mats
                    ],
                }
            )
        num_indices *= len(subs) ** d
        num_systems *= count
        per_point.append(
            {
                "point": pid,
                "weights": [frac_str(w) for w in pw.weights],
                "mults": list(pw.multiplicities),
                "subset_count": len(subs),
                "indices": indices,
            }
        )
    result = {
        "num_indices": num_indices,
        "num_systems": num_systems,
        "per_point": per_point,
    }
    return echo, result


def _codim_result(report: st.CodimReport) -> dict:
    return {
        "dim_M": report.dim_moduli,
        "max_stratum_dim": report.max_stratum_dim,
        "codim": report.codim,
        "bound": frac_str(report.bound),
        "meets_bound": report.meets_bound,
        "codim_at_least_three": report.codim_at_least_three,
        "num_indices": report.num_indices,
        "num_systems": report.num_systems,
    }


def cmd_codim(payload) -> tuple[dict, dict]:
    echo, spec, d = _parse_strata_common(payload)
    report = st.codim_report(spec, d)
    result = _codim_result(report)
    result["delta"] = spec.delta
    return echo, result


# --- codim sweep -------------------------------------------------------------


def _parse_range(doc, path: str) -> list[int]:
    if isinstance(doc, list):
        out = [expect_int(v, f"{path}[{i}]") for i, v in enumerate(doc)]
        if not out:
            raise ValidationError(path, "range must be nonempty")
        return sorted(set(out))
    doc = expect_object(doc, path)
    expect_keys(doc, path, ("min", "max"))
    lo = expect_int(doc["min"], f"{path}.min")
    hi = expect_int(doc["max"], f"{path}.max")
    if hi < lo:
        raise ValidationError(path, "max must be >= min")
    return list(range(lo, hi + 1))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _auto_weights(length: int) -> list[Fraction]:
    return [Fraction(k, length + 1) for k in range(1, length + 1)]


def _sweep_systems(rank: int, max_points: int, max_len: int):
    per_point = []
    for length in range(1, min(max_len, rank) + 1):
        for comp in _compositions(rank, length):
            per_point.append(pb.PointWeights.of(_auto_weights(length), comp))
    for npts in range(1, max_points + 1):
        for combo in itertools.product(per_point, repeat=npts):
            yield {f"p{i + 1}": pw for i, pw in enumerate(combo)}


def cmd_codim_sweep(payload) -> list[dict]:
    doc = expect_object(payload, "$")
    expect_keys(doc, "$", ("g", "r"), optional=("d", "max_points", "max_flag_length"))
    gs = _parse_range(doc["g"], "$.g")
    rs = _parse_range(doc["r"], "$.r")
    ds = _parse_range(doc["d"], "$.d") if "d" in doc and doc["d"] is not None else None
    max_points = expect_int(doc.get("max_points", 2), "$.max_points", minimum=0)
    max_len = expect_int(doc.get("max_flag_length", 3), "$.max_flag_length", minimum=1)
    for g in gs:
        if g < 2:
            raise ValidationError("$.g", "genus values must be >= 2")
    lines = []
    for g in gs:
        for r in rs:
            divs = [d for d in range(2, r + 1) if r % d == 0]
            d_list = [d for d in (ds or divs) if d in divs]
            for d in d_list:
                systems = [{}] if max_points == 0 else [{}] + list(
                    _sweep_systems(r, max_points, max_len)
                )
                for points in systems:
                    spec = st.ModuliSpec.of(g, r, points)
                    report = st.codim_report(spec, d)
                    rec = {"g": g, "r": r, "d": d, "points": echo_points(points)}
                    rec.update(_codim_result(report))
                    lines.append(rec)
    return lines


# --- pushforward -------------------------------------------------------------


def cmd_pushforward(payload) -> tuple[dict, dict]:
    doc = expect_object(payload, "$")
    expect_keys(doc, "$", ("cover", "datum"))
    cdoc = expect_object(doc["cover"], "$.cover")
    expect_keys(cdoc, "$.cover", ("degree", "fibers"))
    degree = expect_int(cdoc["degree"], "$.cover.degree", minimum=1)
    fdoc = expect_object(cdoc["fibers"], "$.cover.fibers")
    fibers = {}
    for base, fib in fdoc.items():
        fib = expect_array(fib, f"$.cover.fibers.{base}")
        ids = []
        for i, q in enumerate(fib):
            if not isinstance(q, str):
                raise ValidationError(f"$.cover.fibers.{base}[{i}]", "expected a point id string")
            ids.append(q)
        fibers[base] = ids
    try:
        cov = cover_mod.CoverSpec.of(degree, fibers)
    except ValueError as exc:
        raise ValidationError("$.cover", str(exc)) from exc

    ddoc = expect_object(doc["datum"], "$.datum")
    expect_keys(ddoc, "$.datum", ("rank", "degree", "points"))
    rank = expect_int(ddoc["rank"], "$.datum.rank", minimum=1)
    deg = expect_int(ddoc["degree"], "$.datum.degree")
    pdoc = expect_object(ddoc["points"], "$.datum.points")
    points = {}
    for pid, pnt in pdoc.items():
        pw = parse_point(pnt, f"$.datum.points.{pid}")
        if pw.total_multiplicity() != rank:
            raise ValidationError(
                f"$.datum.points.{pid}.mults",
                f"multiplicities sum to {pw.total_multiplicity()}, expected rank {rank}",
            )
        points[pid] = pw
    try:
        datum = pb.ParabolicDatum.of(rank, deg, points)
        pushed = cover_mod.pushforward(cov, datum)
    except ValueError as exc:
        raise ValidationError("$", str(exc)) from exc
    echo = {
        "cover": {"degree": degree, "fibers": {b: list(f) for b, f in cov.fibers}},
        "datum": {
            "rank": rank,
            "degree": deg,
            "points": {pid: echo_point(points[pid]) for pid in sorted(points)},
        },
    }
    result = {
        "rank": pushed.rank,
        "degree": pushed.degree,
        "points": {pid: echo_point(pw) for pid, pw in pushed.points},
        "par_degree": frac_str(pb.par_degree(pushed)),
        "par_slope": frac_str(pb.par_slope(pushed)),
    }
    return echo, result


# --- descend ------------------------------------------------------------------


def cmd_descend(payload, convention: str) -> tuple[dict, dict]:
    doc = expect_object(payload, "$")
    expect_keys(doc, "$", ("order", "automorphism", "flag"))
    order = expect_int(doc["order"], "$.order", minimum=1)
    field = cyclotomic_field(order)
    rows = parse_matrix(doc["automorphism"], "$.automorphism", field)
    fdoc = expect_object(doc["flag"], "$.flag")
    expect_keys(fdoc, "$.flag", ("weights", "subspaces"))
    wts = expect_array(fdoc["weights"], "$.flag.weights")
    weights = [parse_fraction(w, f"$.flag.weights[{i}]") for i, w in enumerate(wts)]
    sdocs = expect_array(fdoc["subspaces"], "$.flag.subspaces")
    subspaces = [parse_matrix(s, f"$.flag.subspaces[{i}]", field) for i, s in enumerate(sdocs)]
    try:
        phi = ef.FlagAutomorphism.of(order, rows)
        flag = ef.WeightedFlag.of(order, subspaces, weights)
        res = ef.descend(phi, flag, order)
        morphism_ok = ef.check_parabolic_morphism(flag, flag, phi.matrix, convention)
    except ValueError as exc:
        raise ValidationError("$", str(exc)) from exc
    echo = {
        "order": order,
        "automorphism": [[scalar_json(v) for v in row] for row in rows],
        "flag": {
            "weights": [frac_str(w) for w in weights],
            "subspaces": [[[scalar_json(v) for v in row] for row in sub] for sub in subspaces],
        },
    }
    fibers = []
    for j, (pw, dim) in enumerate(zip(res.fiber_weights, res.eigen_dims), start=1):
        fibers.append(
            {
                "fiber": j,
                "eigenvalue_exponent": j % order,
                "dim": dim,
                "weights": [frac_str(w) for w in pw.weights] if pw else [],
                "mults": list(pw.multiplicities) if pw else [],
            }
        )
    result = {
        "fibers": fibers,
        "matrix": [list(row) for row in res.matrix.entries],
        "fixed_point_shape": ef.fixed_point_shape(res, flag.ambient_dim, order),
        "flag_endomorphism": {"convention": convention, "holds": morphism_ok},
    }
    return echo, result


# --- flagcoh -------------------------------------------------------------------


def cmd_flagcoh(payload, pic_rank_qg_flag: int | None) -> tuple[dict, dict]:
    doc = expect_object(payload, "$")
    expect_keys(doc, "$", ("type", "parabolics"), optional=("pic_rank_qg", "b2_mg"))
    tdoc = expect_array(doc["type"], "$.type")
    comps = []
    for i, comp in enumerate(tdoc):
        comp = expect_array(comp, f"$.type[{i}]")
        if len(comp) != 2 or not isinstance(comp[0], str):
            raise ValidationError(f"$.type[{i}]", "expected [family, rank]")
        comps.append((comp[0], expect_int(comp[1], f"$.type[{i}][1]", minimum=1)))
    try:
        ctype = fc.CartanType.of(comps)
    except ValueError as exc:
        raise ValidationError("$.type", str(exc)) from exc
    pdocs = expect_array(doc["parabolics"], "$.parabolics")
    if not pdocs:
        raise ValidationError("$.parabolics", "at least one parabolic subset is required")
    parabolics = []
    for i, sub in enumerate(pdocs):
        if len(ctype.components) == 1 and isinstance(sub, list) and all(_is_int(v) for v in sub):
            sub = [sub]  # single-component shorthand: a flat index list
        sub = expect_array(sub, f"$.parabolics[{i}]")
        per_comp = []
        for j, part in enumerate(sub):
            part = expect_array(part, f"$.parabolics[{i}][{j}]")
            per_comp.append([expect_int(v, f"$.parabolics[{i}][{j}][{k}]", minimum=1) for k, v in enumerate(part)])
        try:
            ps = fc.ParabolicSubset.of(per_comp)
            fc.pic_rank_flag(ctype, ps)
        except ValueError as exc:
            raise ValidationError(f"$.parabolics[{i}]", str(exc)) from exc
        parabolics.append(ps)
    pic_rank_qg = doc.get("pic_rank_qg", 1)
    pic_rank_qg = expect_int(pic_rank_qg, "$.pic_rank_qg", minimum=1)
    if pic_rank_qg_flag is not None:
        pic_rank_qg = pic_rank_qg_flag
    b2_mg = expect_int(doc.get("b2_mg", 1), "$.b2_mg", minimum=0)
    try:
        report = fc.kunneth_report(ctype, parabolics, pic_rank_qg, b2_mg)
    except ValueError as exc:
        raise ValidationError("$", str(exc)) from exc
    echo = {
        "type": [[f, n] for f, n in ctype.components],
        "parabolics": [[list(part) for part in ps.per_component] for ps in parabolics],
        "pic_rank_qg": pic_rank_qg,
        "b2_mg": b2_mg,
    }
    factors = []
    for ps, poly, rank_p in zip(parabolics, report.factors, report.pic_ranks):
        levi = fc.levi_components(ctype, ps)
        factors.append(
            {
                "parabolic": [list(part) for part in ps.per_component],
                "levi": [[f, n] for f, n in levi.components],
                "pic_rank": rank_p,
                "poincare": list(poly.coefficients()),
            }
        )
    result = {
        "weyl_order": fc.weyl_poincare(ctype).total(),
        "factors": factors,
        "poincare_F": list(report.product.coefficients()),
        "b1_F": report.b1,
        "b2_F": report.b2,
        "b3_F": report.b3,
        "t": report.rank_t,
        "assembled_b2": report.assembled_b2,
    }
    return echo, result


# --- driver --------------------------------------------------------------------


def _parse_argv(argv):
    if not argv:
        raise UsageError(f"missing subcommand; expected one of {', '.join(SUBCOMMANDS)}")
    sub = argv[0]
    if sub in ("-h", "--help"):
        return "help", {}
    if sub not in SUBCOMMANDS:
        raise UsageError(f"unknown subcommand {sub!r}; expected one of {', '.join(SUBCOMMANDS)}")
    opts = {"input": None, "output": None, "sweep": False, "convention": "strict", "pic_rank_qg": None}
    i = 1
    while i < len(argv):
        arg = argv[i]
        if arg == "--input":
            i += 1
            if i == len(argv):
                raise UsageError("--input requires a path")
            opts["input"] = argv[i]
        elif arg == "--output":
            i += 1
            if i == len(argv):
                raise UsageError("--output requires a path")
            opts["output"] = argv[i]
        elif arg == "--sweep":
            if sub != "codim":
                raise UsageError("--sweep applies to the codim subcommand only")
            opts["sweep"] = True
        elif arg == "--convention":
            i += 1
            if i == len(argv) or argv[i] not in ("strict", "non-strict"):
                raise UsageError("--convention requires 'strict' or 'non-strict'")
            if sub != "descend":
                raise UsageError("--convention applies to the descend subcommand only")
            opts["convention"] = argv[i]
        elif arg == "--pic-rank-qg":
            i += 1
            if sub != "flagcoh":
                raise UsageError("--pic-rank-qg applies to the flagcoh subcommand only")
            if i == len(argv):
                raise UsageError("--pic-rank-qg requires a positive integer")
            try:
                value = int(argv[i])
            except ValueError:
                raise UsageError("--pic-rank-qg requires a positive integer") from None
            if value < 1:
                raise UsageError("--pic-rank-qg requires a positive integer")
            opts["pic_rank_qg"] = value
        else:
            raise UsageError(f"unknown option {arg!r}")
        i += 1
    return sub, opts


_HELP = """usage: parastrata SUBCOMMAND [--input PATH] [--output PATH] [options]

subcommands:
  dim          moduli dimension from genus, rank and point data
  generic      genericity verdict with a witness when non-generic
  strata       full stratum-index and matrix enumeration per point
  codim        exact codimension report (--sweep for range mode)
  pushforward  push a datum on fiber points down a cyclic cover
  descend      split a weighted flag along a finite-order automorphism
               (--convention strict|non-strict)
  flagcoh      flag-variety Poincare polynomials and Picard ranks
               (--pic-rank-qg N)

Input is a JSON document on stdin unless --input is given.  Exit codes:
0 success, 1 internal error, 2 invalid input.
"""


def run_command(argv, stdin: bytes = b"") -> tuple[int, bytes, bytes]:
    """Run one CLI invocation; returns (exit status, stdout, stderr)."""
    try:
        sub, opts = _parse_argv(list(argv))
    except UsageError as exc:
        return 2, b"", f"error: {exc}\n".encode()
    if sub == "help":
        return 0, _HELP.encode(), b""
    try:
        if opts["input"] is not None:
            try:
                with open(opts["input"], "rb") as fh:
                    raw = fh.read()
            except OSError as exc:
                return 2, b"", f"error: cannot read input: {exc}\n".encode()
        else:
            raw = stdin
        try:
            payload = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            return 2, b"", f"error: invalid JSON input: {exc}\n".encode()

        if sub == "codim" and opts["sweep"]:
            lines = cmd_codim_sweep(payload)
            out = "".join(json.dumps(line, separators=(",", ":"), ensure_ascii=False) + "\n" for line in lines)
        else:
            if sub == "dim":
                echo, result = cmd_dim(payload)
            elif sub == "generic":
                echo, result = cmd_generic(payload)
            elif sub == "strata":
                echo, result = cmd_strata(payload)
            elif sub == "codim":
                echo, result = cmd_codim(payload)
            elif sub == "pushforward":
                echo, result = cmd_pushforward(payload)
            elif sub == "descend":
                echo, result = cmd_descend(payload, opts["convention"])
            else:
                echo, result = cmd_flagcoh(payload, opts["pic_rank_qg"])
            report = {"version": VERSION, "subcommand": sub, "input": echo, "result": result}
            out = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    except ValidationError as exc:
        return 2, b"", f"error: {exc}\n".encode()
    except Exception as exc:  # pragma: no cover - internal fault path
        return 1, b"", f"internal error: {type(exc).__name__}: {exc}\n".encode()

    data = out.encode("utf-8")
    if opts["output"] is not None:
        try:
            with open(opts["output"], "wb") as fh:
                fh.write(data)
        except OSError as exc:
            return 1, b"", f"internal error: cannot write output: {exc}\n".encode()
        return 0, b"", b""
    return 0, data, b""


def main() -> None:
    stdin = b""
    argv = sys.argv[1:]
    sub = argv[0] if argv else ""
    needs_stdin = sub in SUBCOMMANDS and "--input" not in argv
    if needs_stdin:
        stdin = sys.stdin.buffer.read()
    code, out, err = run_command(argv, stdin)
    if out:
        sys.stdout.buffer.write(out)
        sys.stdout.buffer.flush()
    if err:
        sys.stderr.buffer.write(err)
        sys.stderr.buffer.flush()
    sys.exit(code)


if __name__ == "__main__":
    main()
