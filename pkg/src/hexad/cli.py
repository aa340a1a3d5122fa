"""Command-line entry point: ``hexad <group> <command> [options]``.

Exit codes: 0 verified / SAT / true, 1 refuted / UNSAT / false / absent, 2 error or UNKNOWN.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import acceptance, catalog
from .deriv import (DEFAULT_BOUND, LinearMap, derivation_space, extend_order, inverse_derivation_check, is_member,
                    periodicity, prederivation_space, space_matrices)
from .engel import (PropertyFWitness, em_span_bound, engel_identity, pairs_to_choice, pre_engel_witness,
                    property_f_falsify, valid_pair_choice)
from .freenil import check_estimates, free_nilpotent, ideal_from_pairs, partition_search
from .grading import (HexGrading, TriGrading, derivation_to_grading, grading_to_derivation, triangular_to_hexagonal,
                      verify_hexagonal)
from .lie import JacobiError, LieAlgebra, quotient, series
from .linalg import Matrix, Subspace
from .scalar import format_scalar, parse_scalar
from .units import SAT, UNSAT, UnitSystem, eigenform_family_check, oracle_enumerate, replay, solve_units

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)  # path -> sha256
    verdict: str = ""
    payload: dict = field(default_factory=dict)
    text: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    seconds: float = 0.0
    as_json: bool = False
    timing: bool = False

    def to_json(self, timing: bool = False) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "verdict": self.verdict,
               "exit_code": self.exit_code, "result": self.payload}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def render(self) -> str:
        lines = list(self.text)
        if self.verdict:
            lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


class Context:
    """Resolves algebra references and input files, recording a digest of each input."""

    def __init__(self, args: argparse.Namespace, report: Report):
        self.args = args
        self.report = report
        self._entry_dir: Path | None = None

    def _read(self, path: Path) -> dict:
        data = path.read_bytes()
        self.report.inputs[str(path)] = hashlib.sha256(data).hexdigest()
        return json.loads(data)

    def algebra(self, ref: str | None = None) -> LieAlgebra:
        ref = ref or getattr(self.args, "algebra", None)
        if not ref:
            raise UsageError("--algebra is required (catalog:<name> or a JSON file)")
        if ref.startswith("catalog:"):
            name = ref[len("catalog:"):]
            try:
                entry = catalog.get(name)
            except catalog.UnknownEntryError as e:
                raise UsageError(str(e)) from None
            self._entry_dir = Path(str(catalog.entry_dir(name)))
            self.report.inputs[ref] = "catalog"
            return entry.algebra
        data = self.json_file(ref)
        if "field_order" not in data and self.args.field_order:
            data = {**data, "field_order": self.args.field_order}
        return LieAlgebra.from_json(data)

    def json_file(self, path: str) -> dict:
        p = Path(path)
        if not p.exists() and self._entry_dir is not None and (self._entry_dir / path).exists():
            p = self._entry_dir / path
        if not p.exists():
            raise UsageError(f"file not found: {path}")
        return self._read(p)

    def payload(self, path: str, key: str, marker: str) -> dict:
        """Load a file, unwrapping a --json report and then ``key`` until ``marker`` appears."""
        data = self.json_file(path)
        if "result" in data and "command" in data:
            data = data["result"]
        if marker not in data and isinstance(data.get(key), dict):
            data = data[key]
        return data

    def linear_map(self, g: LieAlgebra, path: str) -> LinearMap:
        data = self.payload(path, "map", "matrix")
        n = int(data.get("field_order", self.args.field_order or g.field_order))
        if "diagonal" in data:
            return LinearMap.diagonal(g, [parse_scalar(str(x), n) for x in data["diagonal"]])
        if "matrix" not in data:
            raise UsageError(f"{path} holds no matrix")
        return LinearMap(g, Matrix.from_strings(data["matrix"], n))


def _vec(v) -> list[str]:
    return [format_scalar(x) for x in v]


def _matrix_rows(M: Matrix) -> list[str]:
    return ["  [" + ", ".join(r) + "]" for r in M.to_strings()]


def _pairs(text: str | None) -> list[tuple[int, int]]:
    """Parse '1-2,3-4' into [(1, 2), (3, 4)]."""
    if not text:
        return []
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            a, b = item.split("-")
            out.append((int(a), int(b)))
        except ValueError:
            raise UsageError(f"pair {item!r} must look like i-j") from None
    return out


# -- algebra ---------------------------------------------------------------

def cmd_algebra_show(ctx: Context, r: Report):
    g = ctx.algebra()
    r.payload = g.to_json()
    r.text.append(f"{g.name}: dim {g.dim} over Q(zeta_{g.field_order})")
    for item in r.payload["brackets"]:
        rhs = " + ".join(f"({c})*x{k}" for k, c in item["out"].items())
        r.text.append(f"  [x{item['i']}, x{item['j']}] = {rhs}")
    r.verdict = "ok"


def cmd_algebra_check(ctx: Context, r: Report):
    try:
        g = ctx.algebra()
    except JacobiError as e:
        r.payload = {"jacobi": False, "triple": [a + 1 for a in e.triple], "residue": _vec(e.residue)}
        r.text.append(f"Jacobi identity fails on {r.payload['triple']}")
        r.verdict, r.exit_code = "refuted", EXIT_REFUTED
        return
    r.payload = {"jacobi": True, "dim": g.dim}
    r.text.append(f"{g.name}: Jacobi identity holds")
    r.verdict = "verified"


def cmd_algebra_series(ctx: Context, r: Report):
    g = ctx.algebra()
    rep = series(g)
    r.payload = rep.to_json()
    r.text.append(f"lower central series dims: {rep.dims}")
    r.text.append(f"nilpotency class: {rep.nilpotency_class}")
    r.verdict = "nilpotent" if rep.nilpotency_class is not None else "not nilpotent"
    r.exit_code = EXIT_OK if rep.nilpotency_class is not None else EXIT_REFUTED


def _subspace_from(ctx: Context, g: LieAlgebra, path: str) -> Subspace:
    data = ctx.json_file(path)
    vecs = [[parse_scalar(str(x), g.field_order) for x in v] for v in data["vectors"]]
    return g.span(vecs) if vecs else Subspace.zero(g.dim, g.field_order)


def cmd_algebra_quotient(ctx: Context, r: Report):
    g = ctx.algebra()
    I = _subspace_from(ctx, g, ctx.args.ideal)
    if not g.is_ideal(I):
        r.payload = {"ideal": False, "violation": str(g.ideal_violation(I))}
        r.verdict, r.exit_code = "not an ideal", EXIT_REFUTED
        return
    Q, P = quotient(g, I)
    r.payload = {"algebra": Q.to_json(), "projection": P.to_strings()}
    r.text.append(f"quotient has dimension {Q.dim}")
    r.verdict = "ok"


# -- derivations -------------------------------------------------------------

def _space(kind: str):
    def run(ctx: Context, r: Report):
        g = ctx.algebra()
        S = derivation_space(g) if kind == "derivation" else prederivation_space(g)
        r.payload = {"kind": kind, "dim": S.dim,
                     "basis": [M.to_strings() for M in space_matrices(S, g.dim)]}
        r.text.append(f"dim {'Der' if kind == 'derivation' else 'PDer'}({g.name}) = {S.dim}")
        r.verdict = "ok"
    return run


def _check(kind: str):
    def run(ctx: Context, r: Report):
        g = ctx.algebra()
        M = ctx.linear_map(g, ctx.args.map)
        mem = is_member(g, M, kind)
        r.payload = mem.to_json()
        if mem:
            r.text.append(f"map is a {kind} of {g.name}")
            r.verdict = "verified"
        else:
            r.text.append(f"identity fails on basis indices {r.payload['violation']}")
            r.verdict, r.exit_code = "refuted", EXIT_REFUTED
    return run


def _periodic(kind: str):
    def run(ctx: Context, r: Report):
        g = ctx.algebra()
        M = ctx.linear_map(g, ctx.args.map)
        mem = is_member(g, M, kind)
        per = periodicity(M, ctx.args.bound)
        r.payload = {"membership": mem.to_json(), "periodicity": per.to_json()}
        if not mem:
            r.text.append(f"map is not a {kind}")
            r.verdict, r.exit_code = "refuted", EXIT_REFUTED
        elif per.order is None:
            r.text.append(f"no period up to {ctx.args.bound}: {per.reason}")
            r.verdict, r.exit_code = "not periodic", EXIT_REFUTED
        else:
            r.payload["certificate_replays"] = per.certificate.replay(M.matrix)
            r.text.append(f"periodic {kind} of order {per.order}")
            r.verdict = f"order {per.order}"
    return run


def cmd_deriv_inverse_check(ctx: Context, r: Report):
    g = ctx.algebra()
    M = ctx.linear_map(g, ctx.args.map)
    res = inverse_derivation_check(g, M)
    r.payload = {"holds": res.holds, "inverse": res.inverse.to_strings() if res.inverse else None}
    if res.membership is not None:
        r.payload["membership"] = res.membership.to_json()
    r.text.append("inverse is a derivation" if res.holds else "inverse is missing or not a derivation")
    r.verdict = "verified" if res.holds else "refuted"
    r.exit_code = EXIT_OK if res.holds else EXIT_REFUTED


def cmd_deriv_extend_order(ctx: Context, r: Report):
    g = ctx.algebra()
    M = ctx.linear_map(g, ctx.args.map)
    E = extend_order(M, ctx.args.k)
    per = periodicity(E, ctx.args.bound)
    r.payload = {"map": {**E.to_json(), "field_order": E.n}, "order": per.order}
    r.text.append(f"extended map has order {per.order}")
    r.text.extend(_matrix_rows(E.matrix))
    r.verdict = f"order {per.order}"


# -- gradings ----------------------------------------------------------------

def cmd_grading_verify(ctx: Context, r: Report):
    g = ctx.algebra()
    h = HexGrading.from_json(g, ctx.payload(ctx.args.grading, "grading", "parts"))
    rep = verify_hexagonal(h)
    r.payload = rep.to_json()
    r.text.append("hexagonal grading is valid" if rep else f"violation: {rep.violations[0]}")
    r.verdict = "verified" if rep else "refuted"
    r.exit_code = EXIT_OK if rep else EXIT_REFUTED


def cmd_grading_from_deriv(ctx: Context, r: Report):
    g = ctx.algebra()
    M = ctx.linear_map(g, ctx.args.map)
    h, trace = derivation_to_grading(g, M)
    r.payload = {"grading": h.to_json(), "trace": trace.to_json()}
    r.text.append(f"part dimensions: {{{', '.join(f'z6^{k}: {d}' for k, d in h.dims().items() if d)}}}")
    r.verdict = "ok"


def cmd_grading_to_deriv(ctx: Context, r: Report):
    g = ctx.algebra()
    h = HexGrading.from_json(g, ctx.payload(ctx.args.grading, "grading", "parts"))
    gd = grading_to_derivation(h)
    r.payload = {**gd.to_json(), "map": {**gd.map.to_json(), "field_order": gd.map.n}}
    r.text.append(f"derivation of order {gd.order}" + (" (degenerate grading)" if gd.degenerate else ""))
    r.text.extend(_matrix_rows(gd.map.matrix))
    r.verdict = f"order {gd.order}"


def cmd_grading_tri_to_hex(ctx: Context, r: Report):
    g = ctx.algebra()
    t = TriGrading.from_json(g, ctx.json_file(ctx.args.tri), ctx.args.field_order)
    h, trace = triangular_to_hexagonal(t)
    r.payload = {"grading": h.to_json(), "trace": trace.to_json()}
    r.text.append(f"hexagonal part dimensions: {h.dims()}")
    r.verdict = "ok"


# -- free nilpotent ----------------------------------------------------------

def _free_and_ideal(ctx: Context):
    F = free_nilpotent(2, ctx.args.generators)
    if getattr(ctx.args, "ideal", None):
        return F, _subspace_from(ctx, F, ctx.args.ideal)
    return F, ideal_from_pairs(F, _pairs(ctx.args.pairs))


def cmd_freenil_build(ctx: Context, r: Report):
    F = free_nilpotent(ctx.args.nil_class, ctx.args.generators)
    r.payload = F.to_json()
    r.text.append(f"{F.name}: dim {F.dim}")
    r.verdict = "ok"


def cmd_freenil_ideal(ctx: Context, r: Report):
    F, I = _free_and_ideal(ctx)
    r.payload = {"generators": ctx.args.generators, "dim": I.dim, "vectors": [_vec(v) for v in I.basis]}
    r.text.append(f"ideal of dimension {I.dim} in {F.name}")
    r.verdict = "ok"


def cmd_freenil_quotient(ctx: Context, r: Report):
    F, I = _free_and_ideal(ctx)
    Q, P = quotient(F, I)
    r.payload = {"algebra": Q.to_json(), "projection": P.to_strings()}
    r.text.append(f"quotient of {F.name} has dimension {Q.dim}")
    r.verdict = "ok"


def cmd_freenil_search(ctx: Context, r: Report):
    F, I = _free_and_ideal(ctx)
    res = partition_search(F, I)
    r.payload = res.to_json()
    if res.found:
        part = res.presentation.partition
        r.text.append("partition " + ", ".join(f"{b}={[i + 1 for i in part[b]]}" for b in ("X", "Y", "Z")))
        r.verdict = "found"
    else:
        r.text.append(res.note)
        r.verdict, r.exit_code = "absent", EXIT_REFUTED


def cmd_freenil_estimates(ctx: Context, r: Report):
    rep = check_estimates(ctx.args.dim, ctx.args.generators, ctx.args.relations)
    r.payload = rep.to_json()
    r.verdict = "holds" if rep.holds else "fails"
    r.exit_code = EXIT_OK if rep.holds else EXIT_REFUTED


# -- Engel ---------------------------------------------------------------------

def _basis(ctx: Context, g: LieAlgebra) -> Matrix:
    if getattr(ctx.args, "basis", None):
        data = ctx.json_file(ctx.args.basis)
        return Matrix.from_strings(data["basis"] if isinstance(data, dict) else data, g.field_order)
    return Matrix.identity(g.dim, g.field_order)


def cmd_engel_identity(ctx: Context, r: Report):
    g = ctx.algebra()
    res = engel_identity(g, ctx.args.m, seed=ctx.args.seed)
    r.payload = res.to_json()
    if res.holds:
        r.text.append(f"ad(x)^{ctx.args.m} = 0 for every x")
    else:
        r.text.append(f"violator: {r.payload['violator']}")
    r.verdict = "holds" if res.holds else "fails"
    r.exit_code = EXIT_OK if res.holds else EXIT_REFUTED


def cmd_engel_witness(ctx: Context, r: Report):
    g = ctx.algebra()
    res = pre_engel_witness(g, _basis(ctx, g), ctx.args.m)
    r.payload = res.to_json()
    r.verdict = "holds" if res.holds else "fails"
    r.exit_code = EXIT_OK if res.holds else EXIT_REFUTED


def cmd_engel_span(ctx: Context, r: Report):
    g = ctx.algebra()
    rep = em_span_bound(g, ctx.args.m)
    r.payload = rep.to_json()
    r.text.append(f"dim E_{ctx.args.m} >= {rep.em_span_lower_bound}")
    r.verdict = "ok"


def cmd_engel_falsify_f(ctx: Context, r: Report):
    g = ctx.algebra()
    B = _basis(ctx, g)
    if ctx.args.witness:
        data = ctx.json_file(ctx.args.witness)
        B = Matrix.from_strings(data["basis"], g.field_order) if "basis" in data else B
        if data["pairs"] and isinstance(data["pairs"][0], dict):
            choice = {tuple(a - 1 for a in p["triple"]): tuple(a - 1 for a in p["pair"]) for p in data["pairs"]}
        else:
            choice = pairs_to_choice(g.dim, [tuple(p) for p in data["pairs"]])
        w = PropertyFWitness(B, choice)
    elif ctx.args.pairs:
        w = PropertyFWitness(B, pairs_to_choice(g.dim, _pairs(ctx.args.pairs)))
    else:
        w = valid_pair_choice(g, B)
        if w is None:
            r.text.append("no triple-wise valid pair choice exists on this basis")
            r.verdict, r.exit_code = "no witness", EXIT_REFUTED
            return
    try:
        res = property_f_falsify(g, w)
    except ValueError as e:
        r.payload = {"not_property_f": False, "error": str(e)}
        r.verdict, r.exit_code = "incomplete witness", EXIT_REFUTED
        return
    r.payload = {**res.to_json(), "witness": w.to_json()}
    r.verdict = "property F falsified" if res.holds else "witness fails"
    r.exit_code = EXIT_OK if res.holds else EXIT_REFUTED


# -- units ---------------------------------------------------------------------

def _system(ctx: Context) -> tuple[UnitSystem, dict]:
    data = ctx.json_file(ctx.args.system)
    return UnitSystem.from_json(data), data


def cmd_units_solve(ctx: Context, r: Report):
    s, _ = _system(ctx)
    v = solve_units(s, refine=ctx.args.refine or ())
    r.payload = {**v.to_json(), "replays": replay(v)}
    r.text.append(f"{v.status} over {', '.join(s.form_str(f) for f in s.forms)}")
    if v.witness:
        r.text.append("witness: " + ", ".join(f"{k}=z{v.witness_order}^{e}" for k, e in v.witness.items()))
    r.verdict = v.status
    r.exit_code = {SAT: EXIT_OK, UNSAT: EXIT_REFUTED}.get(v.status, EXIT_ERROR)


def cmd_units_oracle(ctx: Context, r: Report):
    s, _ = _system(ctx)
    res = oracle_enumerate(s, ctx.args.m)
    r.payload = res.to_json()
    r.verdict = res.status
    r.exit_code = EXIT_OK if res.status == SAT else EXIT_REFUTED


def cmd_units_family_check(ctx: Context, r: Report):
    g = ctx.algebra()
    s, data = _system(ctx)
    kind = ctx.args.kind or data.get("kind", "derivation")
    forms = data["forms"]
    res = eigenform_family_check(g, forms, kind, samples=ctx.args.samples, seed=ctx.args.seed,
                                 positions=data.get("positions"))
    r.payload = res.to_json()
    r.verdict = "holds" if res else "fails"
    r.exit_code = EXIT_OK if res else EXIT_REFUTED


# -- catalog and suite ---------------------------------------------------------

def cmd_catalog_list(ctx: Context, r: Report):
    entries = catalog.list_entries()
    r.payload = {"entries": entries}
    for e in entries:
        r.text.append(f"{e['name']:<24} dim {e['dim']:>2}  {e['description']}")
    r.verdict = f"{len(entries)} entries"


def cmd_catalog_get(ctx: Context, r: Report):
    try:
        e = catalog.get(ctx.args.name)
    except catalog.UnknownEntryError as exc:
        raise UsageError(str(exc)) from None
    checks = e.check_expected() if ctx.args.check else []
    r.payload = {**e.to_json(), "checks": [c.to_json() for c in checks]}
    r.text.append(f"{e.name}: dim {e.algebra.dim}; {e.description}")
    r.text.append(f"witnesses (all re-verified): {', '.join(sorted(e.witnesses)) or 'none'}")
    for c in checks:
        r.text.append(f"  [{'ok' if c.ok else 'MISMATCH'}] {c.name}: expected {c.expected}, got {c.actual}")
    bad = [c for c in checks if not c.ok]
    r.verdict = "verified" if not bad else "mismatch"
    r.exit_code = EXIT_OK if not bad else EXIT_REFUTED


def cmd_verify_paper(ctx: Context, r: Report):
    results = acceptance.run_all(seed=ctx.args.seed)
    r.payload = {"criteria": [c.to_json() for c in results]}
    r.text.extend(c.line() for c in results)
    failed = [c.number for c in results if not c.passed]
    r.verdict = "all criteria pass" if not failed else f"failing criteria: {failed}"
    r.exit_code = EXIT_OK if not failed else EXIT_REFUTED


# -- parser --------------------------------------------------------------------

def _global_flags(sub: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = argparse.SUPPRESS if sub else None
    p.add_argument("--json", action="store_true", default=d if sub else False, help="emit the report as JSON")
    p.add_argument("--seed", type=int, default=d if sub else 0, help="seed for sampling checks (default 0)")
    p.add_argument("--bound", type=int, default=d if sub else DEFAULT_BOUND, help="periodicity scan bound")
    p.add_argument("--field-order", type=int, default=d, help="field order for inputs that omit it")
    p.add_argument("--timing", action="store_true", default=d if sub else False, help="include wall time")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hexad", parents=[_global_flags(False)],
                                     description="Periodic derivations and prederivations of nilpotent Lie algebras.")
    flags = _global_flags(True)
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name: str, fn: Callable, help_text: str, algebra: bool = True):
        p = sub.add_parser(name, parents=[flags], help=help_text)
        p.set_defaults(func=fn)
        if algebra:
            p.add_argument("--algebra", required=True, help="catalog:<name> or a JSON algebra file")
        return p

    g = groups.add_parser("algebra", help="inspect an algebra").add_subparsers(dest="cmd", required=True)
    leaf(g, "show", cmd_algebra_show, "print the bracket table")
    leaf(g, "check", cmd_algebra_check, "verify the Jacobi identity")
    leaf(g, "series", cmd_algebra_series, "lower central and derived series")
    leaf(g, "quotient", cmd_algebra_quotient, "quotient by an ideal").add_argument(
        "--ideal", required=True, help='JSON file {"vectors": [[...], ...]}')

    for group, kind in (("deriv", "derivation"), ("prederiv", "prederivation")):
        d = groups.add_parser(group, help=f"{kind}s").add_subparsers(dest="cmd", required=True)
        leaf(d, "space", _space(kind), f"basis of the {kind} space")
        leaf(d, "check", _check(kind), f"check the {kind} identity").add_argument("--map", required=True)
        leaf(d, "periodic", _periodic(kind), "certify the periodic order").add_argument("--map", required=True)
        if group == "deriv":
            leaf(d, "inverse-check", cmd_deriv_inverse_check, "is the inverse a derivation").add_argument(
                "--map", required=True)
            p = leaf(d, "extend-order", cmd_deriv_extend_order, "order 6k from an order-6 diagonal derivation")
            p.add_argument("--map", required=True)
            p.add_argument("--k", type=int, required=True)

    gr = groups.add_parser("grading", help="hexagonal and triangular gradings").add_subparsers(dest="cmd", required=True)
    leaf(gr, "verify", cmd_grading_verify, "verify a hexagonal grading").add_argument("--grading", required=True)
    leaf(gr, "from-deriv", cmd_grading_from_deriv, "grading from a periodic derivation").add_argument(
        "--map", required=True)
    leaf(gr, "to-deriv", cmd_grading_to_deriv, "derivation acting as z6^k on part k").add_argument(
        "--grading", required=True)
    leaf(gr, "tri-to-hex", cmd_grading_tri_to_hex, "convert a triangular grading").add_argument(
        "--tri", required=True)

    fn = groups.add_parser("freenil", help="free nilpotent algebras and partitions").add_subparsers(
        dest="cmd", required=True)
    p = leaf(fn, "build", cmd_freenil_build, "Hall-basis free nilpotent algebra", algebra=False)
    p.add_argument("--class", dest="nil_class", type=int, required=True)
    p.add_argument("--generators", type=int, required=True)
    for name, func, help_text in (("ideal", cmd_freenil_ideal, "ideal of N(2,g) from bracket pairs"),
                                  ("quotient", cmd_freenil_quotient, "quotient of N(2,g)"),
                                  ("search-partition", cmd_freenil_search, "homogeneous partition search")):
        p = leaf(fn, name, func, help_text, algebra=False)
        p.add_argument("--generators", type=int, required=True)
        p.add_argument("--pairs", help="bracket pairs such as 1-2,3-4")
        p.add_argument("--ideal", help='JSON file {"vectors": [...]} in N(2,g) coordinates')
    p = leaf(fn, "estimates", cmd_freenil_estimates, "dimension and relation estimates", algebra=False)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--generators", type=int, required=True)
    p.add_argument("--relations", type=int, required=True)

    en = groups.add_parser("engel", help="Engel conditions and property F").add_subparsers(dest="cmd", required=True)
    leaf(en, "identity", cmd_engel_identity, "decide ad(x)^m = 0 for all x").add_argument("-m", type=int, default=4)
    p = leaf(en, "witness", cmd_engel_witness, "check a pre-Engel basis")
    p.add_argument("-m", type=int, default=4)
    p.add_argument("--basis", help="JSON basis matrix (columns are basis vectors); default identity")
    leaf(en, "span", cmd_engel_span, "lower bound on dim E_m").add_argument("-m", type=int, default=4)
    p = leaf(en, "falsify-f", cmd_engel_falsify_f, "check a property-F falsification witness")
    p.add_argument("--witness", help="JSON with basis and pairs")
    p.add_argument("--pairs", help="pairs such as 1-2,1-3 on the basis")
    p.add_argument("--basis")

    un = groups.add_parser("units", help="root-of-unity constraint systems").add_subparsers(dest="cmd", required=True)
    p = leaf(un, "solve", cmd_units_solve, "decide a system with a certificate", algebra=False)
    p.add_argument("--system", required=True)
    p.add_argument("--refine", type=int, nargs="*", help="oracle orders tried when the search is incomplete")
    p = leaf(un, "oracle", cmd_units_oracle, "enumerate mu_m assignments", algebra=False)
    p.add_argument("--system", required=True)
    p.add_argument("-m", type=int, required=True)
    p = leaf(un, "family-check", cmd_units_family_check, "sample an eigenvalue family")
    p.add_argument("--system", required=True)
    p.add_argument("--kind", choices=("derivation", "prederivation"))
    p.add_argument("--samples", type=int, default=50)

    ca = groups.add_parser("catalog", help="named algebras").add_subparsers(dest="cmd", required=True)
    leaf(ca, "list", cmd_catalog_list, "list entries", algebra=False)
    p = leaf(ca, "get", cmd_catalog_get, "show and validate an entry", algebra=False)
    p.add_argument("name")
    p.add_argument("--check", action="store_true", help="also re-check the expected values")

    vp = groups.add_parser("verify-paper", parents=[flags], help="run the ten acceptance criteria")
    vp.set_defaults(func=cmd_verify_paper)
    return parser


def run(argv: Sequence[str] | None = None) -> Report:
    argv = list(sys.argv[1:] if argv is None else argv)
    report = Report(command=argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        report.exit_code = EXIT_OK if e.code == 0 else EXIT_ERROR
        report.verdict = "usage" if e.code else "help"
        return report
    report.payload = {}
    t = time.perf_counter()
    try:
        args.func(Context(args, report), report)
    except (UsageError, ValueError, KeyError, JacobiError, OSError, json.JSONDecodeError) as e:
        report.exit_code = EXIT_ERROR
        report.verdict = "error"
        report.payload = {"error": f"{type(e).__name__}: {e}"}
        report.text.append(f"error: {e}")
    report.seconds = time.perf_counter() - t
    report.as_json, report.timing = args.json, args.timing
    return report


def main(argv: Sequence[str] | None = None) -> int:
    report = run(argv)
    if report.verdict in ("usage", "help"):
        return report.exit_code
    if report.as_json:
        print(json.dumps(report.to_json(report.timing), indent=2))
    else:
        print(report.render())
        if report.timing:
            print(f"time: {report.seconds:.3f}s")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
