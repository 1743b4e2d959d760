"""JSON system files, the ``cimellin`` command and its reports."""

from __future__ import annotations

import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

import click

from . import gkz, horn, linalg, mirror, polytope, spectra
from .cayley import AuxPlacement, CayleyMatrix, LaurentSystem, auto_placement, build_phase, cayley_matrix
from .errors import CimellinError, ParseError, UsageError
from .mellin import gamma_product, index_sets, linear_forms, verify_sum_rules

SEED_ENV = "CIMELLIN_SEED"
COMMANDS = ("matrix", "mellin", "horn", "euler", "ehrhart", "hodge", "spectra", "gkz", "mirror", "verify-all")
# Mixed-volume sums grow quickly with the fiber dimension.
EULER_DIM_LIMIT = 5


@dataclass(frozen=True)
class SystemSpec:
    variables: tuple[str, ...]
    polynomials: tuple[tuple[tuple[tuple[str, int], ...], ...], ...]
    deformed: tuple[bool, ...] | None = None
    aux_placement: tuple[int, ...] | None = None
    mirror_partition: tuple[tuple[str, ...], ...] | None = None
    name: str = ""

    def to_system(self) -> LaurentSystem:
        idx = {v: i for i, v in enumerate(self.variables)}
        polys = []
        for poly in self.polynomials:
            monos = []
            for mono in poly:
                e = [0] * len(self.variables)
                for v, p in mono:
                    e[idx[v]] = p
                monos.append(tuple(e))
            polys.append(tuple(monos))
        part = None
        if self.mirror_partition is not None:
            part = tuple(tuple(sorted(idx[v] for v in b)) for b in self.mirror_partition)
        deformed = self.deformed if self.deformed is not None else ()
        return LaurentSystem(len(self.variables), tuple(polys), self.variables, deformed, part)

    def to_json(self) -> dict:
        out: dict[str, Any] = {}
        if self.name:
            out["name"] = self.name
        out["variables"] = list(self.variables)
        out["polynomials"] = [[{v: p for v, p in mono} for mono in poly] for poly in self.polynomials]
        if self.deformed is not None:
            out["deformed"] = list(self.deformed)
        if self.aux_placement is not None:
            out["aux_placement"] = list(self.aux_placement)
        if self.mirror_partition is not None:
            out["mirror_partition"] = [list(b) for b in self.mirror_partition]
        return out


def emit_system(spec: SystemSpec) -> str:
    return json.dumps(spec.to_json(), indent=2, sort_keys=False) + "\n"


def _expect(cond: bool, loc: str, msg: str) -> None:
    if not cond:
        raise ParseError(loc, msg)


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_text(text: str, source: str = "<input>") -> SystemSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None
    _expect(isinstance(data, dict), source, "top level must be an object")
    known = {"name", "variables", "polynomials", "deformed", "aux_placement", "mirror_partition"}
    for key in data:
        _expect(key in known, f"{source}:{key}", "unknown field")
    _expect("variables" in data, source, "missing field 'variables'")
    _expect("polynomials" in data, source, "missing field 'polynomials'")
    variables = data["variables"]
    _expect(isinstance(variables, list), f"{source}:variables", "must be a list of names")
    seen: set[str] = set()
    for i, v in enumerate(variables):
        _expect(isinstance(v, str) and v != "", f"{source}:variables[{i}]", "names must be nonempty strings")
        _expect(v not in seen, f"{source}:variables[{i}]", f"duplicate variable '{v}'")
        seen.add(v)
    polys_raw = data["polynomials"]
    _expect(isinstance(polys_raw, list) and polys_raw, f"{source}:polynomials", "must be a nonempty list")
    polys = []
    for q, poly in enumerate(polys_raw):
        loc = f"{source}:polynomials[{q}]"
        _expect(isinstance(poly, list) and poly, loc, "must be a nonempty list of monomials")
        monos = []
        for j, mono in enumerate(poly):
            mloc = f"{loc}[{j}]"
            _expect(isinstance(mono, dict), mloc, "a monomial is an object name -> exponent")
            items = []
            for v, p in mono.items():
                _expect(v in seen, f"{mloc}.{v}", f"undeclared variable '{v}'")
                _expect(_is_int(p), f"{mloc}.{v}", "exponents must be integers")
                if p:
                    items.append((v, p))
            order = {v: i for i, v in enumerate(variables)}
            monos.append(tuple(sorted(items, key=lambda vp: order[vp[0]])))
        polys.append(tuple(monos))
    deformed = None
    if "deformed" in data:
        d = data["deformed"]
        _expect(isinstance(d, list) and len(d) == len(polys), f"{source}:deformed", "one boolean per polynomial")
        for i, x in enumerate(d):
            _expect(isinstance(x, bool), f"{source}:deformed[{i}]", "must be true or false")
        deformed = tuple(d)
    placement = None
    if data.get("aux_placement") is not None:
        a = data["aux_placement"]
        _expect(isinstance(a, list), f"{source}:aux_placement", "a list of term indices")
        for i, x in enumerate(a):
            _expect(_is_int(x) and x >= 0, f"{source}:aux_placement[{i}]", "term indices are nonnegative integers")
        placement = tuple(a)
    partition = None
    if data.get("mirror_partition") is not None:
        mp = data["mirror_partition"]
        _expect(isinstance(mp, list), f"{source}:mirror_partition", "a list of blocks of variable names")
        used: set[str] = set()
        blocks = []
        for b, block in enumerate(mp):
            _expect(isinstance(block, list) and block, f"{source}:mirror_partition[{b}]", "nonempty list of names")
            for i, v in enumerate(block):
                _expect(v in seen, f"{source}:mirror_partition[{b}][{i}]", f"undeclared variable '{v}'")
                _expect(v not in used, f"{source}:mirror_partition[{b}][{i}]", f"'{v}' appears in two blocks")
                used.add(v)
            blocks.append(tuple(block))
        partition = tuple(blocks)
    name = data.get("name", "")
    _expect(isinstance(name, str), f"{source}:name", "must be a string")
    return SystemSpec(tuple(variables), tuple(polys), deformed, placement, partition, name)


def parse_system(path: str | Path) -> SystemSpec:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(str(path), f"cannot read file: {exc.strerror}") from None
    return parse_text(text, str(path))


def fixture_path(name: str) -> Path:
    """Bundled fixture by file name; the ``.json`` suffix is optional."""
    if not name.endswith(".json"):
        name += ".json"
    return Path(__file__).parent / "fixtures" / name


def _machine(x: Any) -> Any:
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, dict):
        return {str(k): _machine(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_machine(v) for v in x]
    return str(x)


def _text(x: Any) -> str:
    if isinstance(x, (list, tuple)) and x and all(isinstance(r, (list, tuple)) for r in x):
        cells = [[str(_machine(c)) for c in r] for r in x]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n" + "\n".join("  [" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(str(_machine(v)) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_machine(v)}" for k, v in x.items()) + "}"
    return str(_machine(x))


@dataclass
class Check:
    name: str
    status: str  # "pass", "fail" or "heuristic"
    detail: str = ""


@dataclass
class Report:
    command: str
    input_hash: str
    seed: int
    values: list[tuple[str, Any]] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    def add(self, key: str, value: Any) -> None:
        self.values.append((key, value))

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, "pass" if ok else "fail", detail))

    def heuristic(self, name: str, detail: str) -> None:
        self.checks.append(Check(name, "heuristic", detail))

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def render_text(self) -> str:
        lines = [f"command: {self.command}", f"input: {self.input_hash}", f"seed: {self.seed}"]
        for k, v in self.values:
            lines.append(f"{k}: {_text(v)}")
        marks = {"pass": "PASS", "fail": "FAIL", "heuristic": "HEUR"}
        for c in self.checks:
            lines.append(f"[{marks[c.status]}] {c.name}" + (f" ({c.detail})" if c.detail else ""))
        lines.append(f"status: {'ok' if self.ok else 'failed'}")
        return "\n".join(lines) + "\n"

    def render_machine(self) -> str:
        data = {
            "command": self.command,
            "input_hash": self.input_hash,
            "seed": str(self.seed),
            "values": [{"key": k, "value": _machine(v)} for k, v in self.values],
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks],
            "ok": self.ok,
        }
        return json.dumps(data, indent=2, sort_keys=True) + "\n"


@dataclass
class Flags:
    placement: str | None = None
    q: int | None = None
    J: tuple[int, ...] | None = None
    zeta: tuple[int, ...] | None = None
    seed: int = 0


def _cayley(spec: SystemSpec, flags: Flags) -> CayleyMatrix:
    sys_ = spec.to_system()
    mode = flags.placement or ("explicit" if spec.aux_placement is not None else "auto")
    if mode == "explicit":
        if spec.aux_placement is None:
            raise UsageError("--placement explicit needs 'aux_placement' in the system file")
        placement = AuxPlacement(spec.aux_placement)
    elif mode == "auto":
        placement = auto_placement(sys_)
    else:
        raise UsageError(f"unknown placement mode '{mode}'")
    return cayley_matrix(build_phase(sys_, placement))


def _point(cm: CayleyMatrix, flags: Flags) -> tuple[list[int], list[int]]:
    lay = cm.layout
    J = list(flags.J) if flags.J is not None else [0] * lay.n_x
    zeta = list(flags.zeta) if flags.zeta is not None else [0] * lay.k
    if len(J) != lay.n_x:
        raise UsageError(f"--J needs {lay.n_x} entries")
    if len(zeta) != lay.k:
        raise UsageError(f"--zeta needs {lay.k} entries")
    return J, zeta


def _qs(cm: CayleyMatrix, flags: Flags) -> list[int]:
    n_s = cm.layout.n_s
    if flags.q is None:
        return list(range(n_s))
    if not 1 <= flags.q <= n_s:
        raise UsageError(f"--q must lie in 1..{n_s}")
    return [flags.q - 1]


def cmd_matrix(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    cm = _cayley(spec, flags)
    rep.add("columns", list(cm.var_order))
    rep.add("terms", list(cm.layout.term_labels))
    rep.add("L", cm.l)
    rep.add("det", cm.det)
    rep.add("delta", cm.delta)
    rep.add("T = delta L^-1", cm.t)
    ident = [[sum(cm.l[i][m] * cm.t[m][j] for m in range(cm.size)) for j in range(cm.size)] for i in range(cm.size)]
    rep.check("L T = delta I", all(ident[i][j] == (cm.delta if i == j else 0) for i in range(cm.size) for j in range(cm.size)))


def cmd_mellin(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    cm = _cayley(spec, flags)
    J, zeta = _point(cm, flags)
    forms = linear_forms(cm)
    rep.add("forms", [str(f.substitute(J, zeta)) for f in forms])
    rep.add("gamma", str(gamma_product(forms, J, zeta)))
    sums = verify_sum_rules(forms)
    rep.check("column sums of the forms", sums.ok, "; ".join(sums.failures))


def _euler_dim(cm: CayleyMatrix) -> int:
    lay = cm.layout
    return lay.n_x + lay.n_aux + lay.n_s - 1


def cmd_horn(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    cm = _cayley(spec, flags)
    J, zeta = _point(cm, flags)
    forms = linear_forms(cm)
    sets = index_sets(forms)
    ops = horn.horn_operators(forms, sets, J, zeta)
    gp = gamma_product(forms, J, zeta)
    for q in _qs(cm, flags):
        op = ops[q]
        rep.add(f"q{q + 1} degrees (P, Q)", [op.p_degree, op.q_degree])
        rep.add(f"q{q + 1} reduced degree", horn.reduced_degree(gp, q))
        rep.check(f"q{q + 1} deg P = deg Q", op.p_degree == op.q_degree)
        if cm.phase is not None and _euler_dim(cm) <= EULER_DIM_LIMIT:
            euler, _ = horn.euler_fiber(cm.phase, q)
            rep.add(f"q{q + 1} euler", euler)
            rep.check(f"q{q + 1} reduced degree = euler", horn.reduced_degree(gp, q) == euler)
    comp = horn.compatibility_check(horn.ore_sato(ops), seed=flags.seed)
    rep.check("Ore-Sato compatibility", comp.ok, f"{comp.points} points")
    growth = horn.growth_check_gamma(gp, seed=flags.seed)
    rep.heuristic("growth exponent lower bound", f"alpha >= {growth.alpha_lower:.6f}")


def cmd_euler(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    cm = _cayley(spec, flags)
    if cm.phase is None:
        raise UsageError("no phase attached to this matrix")
    for q in _qs(cm, flags):
        euler, terms = horn.euler_fiber(cm.phase, q)
        rep.add(f"q{q + 1} euler", euler)
        rep.add(f"q{q + 1} mixed volumes", {",".join(map(str, a)): v for a, v in sorted(terms.items())})


def _newton(sys_: LaurentSystem) -> list[polytope.LatticePolytope]:
    return [polytope.hull(p) for p in sys_.polys]


def cmd_ehrhart(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    sys_ = spec.to_system()
    for q, p in enumerate(_newton(sys_)):
        data = polytope.ehrhart(p)
        rep.add(f"f{q + 1} dim", p.dim)
        rep.add(f"f{q + 1} psi", list(data.psi))
        rep.add(f"f{q + 1} phi", list(data.phi))
        rep.check(f"f{q + 1} reciprocity", data.reciprocity_holds())
        rep.check(f"f{q + 1} psi(1) = normalized volume", sum(data.psi) == polytope.normalized_volume(p))


def cmd_hodge(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    sys_ = spec.to_system()
    if sys_.k == 1:
        hd = polytope.hodge_dims(sys_.polys[0])
        rep.add("psi", list(hd.psi))
        rep.add("assumption", hd.assumption)
    cm = _cayley(spec, flags)
    J, zeta = _point(cm, flags)
    lvl = spectra.hodge_level(cm, J, zeta)
    rep.add("degree", lvl.degree)
    rep.add("level", lvl.r)
    rep.check("form sum agrees with the point degree", lvl.consistent)


def cmd_spectra(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    cm = _cayley(spec, flags)
    J, zeta = _point(cm, flags)
    forms = linear_forms(cm)
    sets = index_sets(forms)
    _, counts = spectra.classify_weights(cm)
    rep.add("weights (trivial, nontrivial)", [counts.n_trivial, counts.n_nontrivial])
    rep.check("weight counts (k, M + 1)", counts.ok, f"expected {counts.expected_trivial}, {counts.expected_nontrivial}")
    for q in _qs(cm, flags):
        sp = spectra.spectra(forms, sets, J, zeta, q)
        rep.add(f"q{q + 1} boundary", [str(f) for f in sp.boundary])
        rep.add(f"q{q + 1} weight level", spectra.weight_level(forms, sets, J, zeta, q))
    if cm.layout.n_s <= 2:
        jb = spectra.jordan_bound(forms, J, zeta, box=cm.delta)
        rep.heuristic("Jordan block bound", f"block {jb.block} from {jb.count} forms, box {jb.box}")


def cmd_gkz(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    sys_ = spec.to_system()
    am = gkz.a_matrix(sys_)
    rep.add("A", am.m)
    J = list(flags.J) if flags.J is not None else [0] * sys_.n_vars
    zeta = list(flags.zeta) if flags.zeta is not None else [0] * sys_.k
    g = gkz.gkz_system(am, J, zeta)
    rep.add("box operators", [b.render() for b in g.box_ops])
    rep.check("box vectors annihilate A", all(all(x == 0 for x in linalg.matvec(am.m, b.vector)) for b in g.box_ops))
    rr = gkz.gkz_rank_report(sys_)
    rep.add("rank", rr.value)
    rep.check("cone volume = base volume", rr.ok)
    if sys_.n_vars <= EULER_DIM_LIMIT:
        e = gkz.euler_cayley(sys_)
        rep.add("euler", e)
        rep.check("rank = euler", rr.value == e)


def _mirror_input(spec: SystemSpec) -> mirror.MirrorInput:
    if spec.mirror_partition is None:
        raise UsageError("this command needs 'mirror_partition' in the system file")
    return mirror.MirrorInput.from_system(spec.to_system())


def cmd_mirror(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    mi = _mirror_input(spec)
    pair = mirror.transpose_pair(mi, strict=False)
    (_, wx), (ty, wy) = pair.x_side, pair.y_side
    rep.add("weights", [list(g) for g in wx.g])
    rep.add("block degrees", [list(r) for r in wx.q_hat])
    rep.add("transposed monomials", [list(r) for r in ty.l_lambda])
    rep.add("transposed partition", [list(b) for b in ty.partition])
    rep.add("transposed weights", [list(g) for g in wy.g])
    rep.add("transposed block degrees", [list(r) for r in wy.q_hat])
    rep.add("self dual", pair.self_dual)
    for name in mirror.CONDITIONS:
        rep.check(f"condition: {name}", pair.conditions[name])
    if pair.ok:
        mm = mirror.mellin_mirror(pair)
        rep.add("xi", [str(x) for x in mm.x_xi])
        rep.add("gamma", str(mm.x_mirror))
        rep.add("transposed xi", [str(x) for x in mm.y_xi])
        rep.add("transposed gamma", str(mm.y_mirror))
        rep.check("mirror Gamma = direct Gamma", mm.x_ok)
        rep.check("transposed mirror Gamma = direct Gamma", mm.y_ok)
        bck = mirror.verify_bck(pair)
        for key, val in bck.values.items():
            rep.add(key, str(val.as_expr()))
        rep.check("M_X = PO_Y on the diagonal", bck.x_monodromy_euler)
        rep.check("PO_Y = P_A_Y", bck.x_euler_poincare)
        rep.check("M_Y = PO_X on the diagonal", bck.y_monodromy_euler)
        rep.check("PO_X = P_A_X", bck.y_euler_poincare)
    cm = mi.cayley()
    try:
        mirror.xi_forms(cm)
        rep.check("xi at s, product and constant terms", True)
    except CimellinError as exc:
        rep.check("xi at s, product and constant terms", False, str(exc))
    ms = mirror.magic_square(cm)
    rep.add("magic square", list(ms.sigma) if ms else "none")
    for op in mirror.quantum_operators(wy):
        rep.add(f"operator t{op.nu + 1}", str(op.expr()))


def _verify_cayley(cm: CayleyMatrix, spec: SystemSpec, flags: Flags, rep: Report) -> None:
    J, zeta = _point(cm, flags)
    forms = linear_forms(cm)
    sums = verify_sum_rules(forms)
    rep.check("column sums of the forms", sums.ok, "; ".join(sums.failures))
    sets = index_sets(forms)
    ops = horn.horn_operators(forms, sets, J, zeta)
    rep.check("deg P = deg Q for every q", all(op.p_degree == op.q_degree for op in ops))
    comp = horn.compatibility_check(horn.ore_sato(ops), seed=flags.seed)
    rep.check("Ore-Sato compatibility", comp.ok, f"{comp.points} points")
    if cm.phase is not None and _euler_dim(cm) <= EULER_DIM_LIMIT:
        gp = gamma_product(forms, J, zeta)
        for q in range(cm.layout.n_s):
            euler, _ = horn.euler_fiber(cm.phase, q)
            rep.check(f"q{q + 1} reduced Horn degree = euler", horn.reduced_degree(gp, q) == euler, f"euler {euler}")
    _, counts = spectra.classify_weights(cm)
    rep.check(
        "weight counts (k, M + 1)",
        counts.ok,
        f"got {counts.n_trivial}, {counts.n_nontrivial}; expected {counts.expected_trivial}, {counts.expected_nontrivial}",
    )
    if spec.mirror_partition is None:
        try:
            mirror.mirror_terms(cm)
        except CimellinError:
            return
        try:
            mirror.xi_forms(cm)
            rep.check("xi at s, product and constant terms", True)
        except CimellinError as exc:
            rep.check("xi at s, product and constant terms", False, str(exc))


def cmd_verify_all(spec: SystemSpec, flags: Flags, rep: Report) -> None:
    try:
        cm = _cayley(spec, flags)
    except CimellinError as exc:
        rep.add("cayley suites", f"skipped: {exc}")
    else:
        _verify_cayley(cm, spec, flags, rep)
    sys_ = spec.to_system()
    for q, p in enumerate(_newton(sys_)):
        if p.dim == p.dim_ambient and p.dim <= 3:
            data = polytope.ehrhart(p)
            rep.check(f"f{q + 1} Ehrhart reciprocity", data.reciprocity_holds())
    if sys_.n_vars + sys_.k <= EULER_DIM_LIMIT + 1:
        try:
            am = gkz.a_matrix(sys_)
        except CimellinError as exc:
            rep.add("gkz suites", f"skipped: {exc}")
        else:
            g = gkz.gkz_system(am, [0] * sys_.n_vars, [0] * sys_.k)
            rep.check("box vectors annihilate A", all(all(x == 0 for x in linalg.matvec(am.m, b.vector)) for b in g.box_ops))
            rr = gkz.gkz_rank_report(sys_)
            rep.check("cone volume = base volume", rr.ok)
            rep.check("GKZ rank = euler", rr.value == gkz.euler_cayley(sys_), f"rank {rr.value}")
    if spec.mirror_partition is not None:
        sub = Report(rep.command, rep.input_hash, rep.seed)
        cmd_mirror(spec, flags, sub)
        rep.values.extend(v for v in sub.values if v[0] in ("gamma", "transposed gamma", "P_A_X", "P_A_Y"))
        rep.checks.extend(sub.checks)


HANDLERS: dict[str, Callable[[SystemSpec, Flags, Report], None]] = {
    "matrix": cmd_matrix,
    "mellin": cmd_mellin,
    "horn": cmd_horn,
    "euler": cmd_euler,
    "ehrhart": cmd_ehrhart,
    "hodge": cmd_hodge,
    "spectra": cmd_spectra,
    "gkz": cmd_gkz,
    "mirror": cmd_mirror,
    "verify-all": cmd_verify_all,
}


def input_hash(spec: SystemSpec) -> str:
    canon = json.dumps(spec.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def run(command: str, spec: SystemSpec, flags: Flags | None = None) -> Report:
    if command not in HANDLERS:
        raise UsageError(f"unknown command '{command}'; choose from {', '.join(COMMANDS)}")
    flags = flags or Flags()
    rep = Report(command, input_hash(spec), flags.seed)
    HANDLERS[command](spec, flags, rep)
    return rep


def _ints(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma separated integers, got '{text}'") from None


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise click.BadParameter(f"{SEED_ENV} must be an integer") from None
    return 0


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.argument("command", type=click.Choice(COMMANDS))
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--placement", type=click.Choice(["auto", "explicit"]), default=None, help="Auxiliary placement mode.")
@click.option("--q", "q", type=int, default=None, help="1-based s index.")
@click.option("--J", "J", default=None, help="Comma separated exponent shifts.")
@click.option("--zeta", default=None, help="Comma separated zeta values.")
@click.option("--seed", type=int, default=None, help=f"Sampling seed (default from {SEED_ENV}, else 0).")
@click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text")
def main(command: str, file: str, placement, q, J, zeta, seed, fmt) -> None:
    """Run COMMAND on the system described in FILE."""
    flags = Flags(placement, q, _ints(J), _ints(zeta), resolve_seed(seed))
    try:
        spec = parse_system(file)
        rep = run(command, spec, flags)
    except CimellinError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(rep.render_machine() if fmt == "machine" else rep.render_text(), nl=False)
    sys.exit(0 if rep.ok else 1)


if __name__ == "__main__":
    main()
