"""Command-line interface: ``crgflat <command> <group> [options]``.

Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass

from .errors import DomainError, UnsupportedParams, NotCoxeter
from .exactnum import to_json as num_json, format_cyclo
from .exactla import Matrix
from .polyring import VarFrame, to_json as poly_json, format_poly
from .groups import (catalog_group, canonical_name, group_regularity_counts, verify_group, DEFAULT_CAP)
from .triplets import find_admissible_triplet, graded_frame, verify_triplet
from .goodinv import good_invariants, check_good, Invariantizer
from .saito import saito_data, verify_flat_and_consistent, omega_oracle
from .coxeter import coxeter_data, satake_structure_constants

COMMANDS = ("list-groups", "group-info", "triplet", "good-invariants", "saito", "coxeter-potential", "verify")
_FAMILY = re.compile(r"^G\((\d+),(\d+),(\d+)\)$")
_EXCEPTIONAL = re.compile(r"^G\d+$")


@dataclass
class RunConfig:
    command: str
    group: str | None
    fmt: str = "text"
    cap: int = DEFAULT_CAP
    oracle: bool = False
    zeta_exp: int | None = None
    search: bool = False
    out: str | None = None


def parse_group_name(name: str, command: str) -> str:
    key = canonical_name(name)
    mt = _FAMILY.match(key)
    if mt:
        m, p, n = (int(v) for v in mt.groups())
        if p not in (1, m) and command != "group-info":
            raise UnsupportedParams(
                f"{key}: only G(m,1,n) and G(m,m,n) carry admissible triplets; "
                f"run `group-info \"{key}\"` for the a/b regularity counts")
        return key
    if _EXCEPTIONAL.match(key):
        return key
    raise UnsupportedParams(f"unrecognised group name {name!r}; use G5-style names or G(m,p,n)")


def build_parser():
    p = argparse.ArgumentParser(prog="crgflat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd)
        if cmd != "list-groups":
            sp.add_argument("group")
        sp.add_argument("--format", dest="fmt", choices=("json", "latex", "text"), default="text")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
        sp.add_argument("--oracle", action="store_true")
        sp.add_argument("--zeta-exp", type=int, default=None)
        sp.add_argument("--search-triplet", dest="search", action="store_true")
        sp.add_argument("--out", default=None)
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.cap <= 0:
        raise SystemExit(2)
    return RunConfig(ns.command, getattr(ns, "group", None), ns.fmt, ns.cap, ns.oracle,
                     ns.zeta_exp, ns.search, ns.out)


# -- serialisation helpers -------------------------------------------------------------

def _mat_json(M):
    if isinstance(M, Matrix):
        return [[num_json(x) for x in row] for row in M.data]
    return [[poly_json(e) for e in row] for row in M]


def _c_json(C):
    return [_mat_json(Ca) for Ca in C]


class Emitter:
    def __init__(self, fmt):
        self.fmt = fmt
        self.doc = {"group": None, "degrees": None, "triplet": None, "invariants": None,
                    "saito": None, "coxeter": None}
        self.lines = []

    def num(self, x):
        return format_cyclo(x, latex=self.fmt == "latex")

    def poly(self, P):
        return format_poly(P, latex=self.fmt == "latex")

    def line(self, s=""):
        self.lines.append(s)

    def eq(self, lhs, P):
        if self.fmt == "latex":
            self.lines.append(f"{lhs} &= {self.poly(P)} \\\\")
        else:
            self.lines.append(f"{lhs} = {self.poly(P)}")

    def matrix(self, label, M):
        rows = M.data if isinstance(M, Matrix) else M
        fmt = self.num if isinstance(M, Matrix) else self.poly
        if self.fmt == "latex":
            body = " \\\\ ".join(" & ".join(fmt(x) for x in r) for r in rows)
            self.lines.append(f"{label} = \\begin{{bmatrix}} {body} \\end{{bmatrix}}")
        else:
            self.lines.append(f"{label} =")
            for r in rows:
                self.lines.append("  [" + ", ".join(fmt(x) for x in r) + "]")

    def render(self):
        if self.fmt == "json":
            return json.dumps(self.doc, indent=2) + "\n"
        return "\n".join(self.lines) + "\n"


# -- commands --------------------------------------------------------------------------

def _header(em, G):
    em.doc["group"] = G.name
    em.doc["degrees"] = list(G.degrees)
    em.line(f"group: {G.name}")
    em.line(f"degrees: {tuple(G.degrees)}")


def cmd_list_groups(cfg, em):
    rows = [
        ("G5", "rank 2, duality, degrees (12, 6)"),
        ("G6", "rank 2, duality, degrees (12, 4)"),
        ("G12", "rank 2, non-duality, degrees (8, 6)"),
        ("G13", "rank 2, non-duality, degrees (12, 8)"),
        ("G15", "rank 2, data only (degrees/codegrees), no admissible triplet"),
        ("G22", "rank 2, non-duality, degrees (20, 12)"),
        ("G(m,m,n)", "m >= 2, n >= 2; Coxeter for m = 2 or n = 2"),
        ("G(m,1,n)", "m >= 2, n >= 2; Coxeter for m = 2"),
        ("G(m,p,n)", "1 < p < m, p | m; group-info only (no admissible triplet)"),
    ]
    em.doc["group"] = [{"name": a, "description": b} for a, b in rows]
    for a, b in rows:
        em.line(f"{a:10s} {b}")


def cmd_group_info(cfg, G, em):
    _header(em, G)
    a, b = group_regularity_counts(G)
    info = {
        "name": G.name, "dim": G.dim, "field_order": G.field_order,
        "degrees": list(G.degrees), "codegrees": list(G.codegrees), "order": G.expected_order,
        "duality": G.duality, "coxeter": G.coxeter, "a": a, "b": b,
        "admissible_triplet": a == b and not G.data_only, "data_only": G.data_only,
        "notes": list(G.notes),
    }
    em.doc["info"] = info
    em.line(f"codegrees: {tuple(G.codegrees)}")
    em.line(f"order: {G.expected_order}")
    em.line(f"duality: {G.duality}   coxeter: {G.coxeter}")
    em.line(f"a(d1) = {a}   b(d1) = {b}   admissible triplet: {info['admissible_triplet']}")
    for n in G.notes:
        em.line(f"note: {n}")


def _triplet_doc(T, G):
    return {"id": T.triplet_id, "source": T.source, "d1": T.d1, "zeta_power": T.zeta_power,
            "g": _mat_json(T.g), "q": [num_json(x) for x in T.q]}


def cmd_triplet(cfg, G, em):
    _header(em, G)
    T = find_admissible_triplet(G, zeta_exp=cfg.zeta_exp, search=cfg.search, cap=cfg.cap)
    F = graded_frame(G, T)
    rep = verify_triplet(G, T)
    doc = _triplet_doc(T, G)
    doc["basis"] = _mat_json(F.basis)
    doc["checks"] = rep
    em.doc["triplet"] = doc
    em.line(f"triplet: {T.describe()}")
    em.matrix("g", T.g)
    em.line("q = (" + ", ".join(em.num(x) for x in T.q) + ")")
    em.matrix("Q (graded basis, columns)", F.basis)
    for k, v in rep.items():
        em.line(f"check {k}: {'ok' if v else 'FAIL'}")
    return all(rep.values())


def _record(cfg, G):
    return good_invariants(G, zeta_exp=cfg.zeta_exp, search=cfg.search)


def cmd_good_invariants(cfg, G, em):
    _header(em, G)
    rec = _record(cfg, G)
    em.doc["triplet"] = _triplet_doc(rec.frame.triplet, G)
    catalog_z = rec.frame.invariants_in_z(G.invariants)
    inv = Invariantizer(catalog_z.polys, catalog_z.degrees, VarFrame.make("y", len(rec.polys), rec.degrees))
    in_catalog = [inv.express(P) for P in rec.polys]
    em.doc["invariants"] = {
        "z": [poly_json(P) for P in rec.polys],
        "catalog": [poly_json(P) for P in in_catalog],
        "catalog_label": G.invariants.label,
        "corrections": [{"alpha": a + 1, "b": list(b), "B": num_json(v)}
                        for (a, b), v in sorted(rec.corrections.items())],
    }
    em.line(f"triplet: {rec.triplet_id}")
    em.line(f"good basic invariants (z-coordinates), catalog invariants y = {G.invariants.label}:")
    for i, (P, Py) in enumerate(zip(rec.polys, in_catalog)):
        em.eq(f"x{i + 1}", P)
        em.eq("   ", Py)


def cmd_saito(cfg, G, em):
    _header(em, G)
    rec = _record(cfg, G)
    sd = saito_data(G, rec)
    n = len(rec.polys)
    doc = {"potential_vector_field": [poly_json(P) for P in sd.G_vec], "C": _c_json(sd.C),
           "trivial": sd.trivial}
    em.line(f"triplet: {rec.triplet_id}")
    if sd.trivial:
        em.line("non-duality group: formal trivial structure")
    for i, P in enumerate(sd.G_vec):
        em.eq(f"G^{i + 1}", P)
    for a in range(n):
        em.matrix(f"C_{a + 1}", sd.C[a])
    ok = True
    if cfg.oracle and not sd.trivial:
        orc = omega_oracle(rec.x, G)
        doc["oracle"] = {"gamma_zero": orc.flat, "C_matches": orc.C == sd.C, **orc.checks}
        for k, v in doc["oracle"].items():
            em.line(f"oracle {k}: {'ok' if v else 'FAIL'}")
        ok = all(doc["oracle"].values())
    em.doc["saito"] = doc
    return ok


def _require_coxeter(G):
    if not G.coxeter:
        raise NotCoxeter(f"{G.name} is not a Coxeter group")


def cmd_coxeter(cfg, G, em):
    _header(em, G)
    _require_coxeter(G)
    rec = _record(cfg, G)
    cd = coxeter_data(G, rec)
    em.doc["coxeter"] = {
        "B": _mat_json(cd.B), "eta_tilde": _mat_json(cd.eta_tilde), "eta": _mat_json(cd.eta),
        "x_hat": [poly_json(P) for P in cd.x_hat_x], "F": poly_json(cd.F), "checks": cd.checks,
    }
    em.matrix("eta", cd.eta)
    for i, P in enumerate(cd.x_hat_x):
        em.eq(f"xhat_{i + 1}", P)
    em.eq("F", cd.F)


def cmd_verify(cfg, G, em):
    _header(em, G)
    results = {}
    if G.generators and len(G.elements(cfg.cap)) <= cfg.cap:
        results.update({f"group.{k}": v for k, v in verify_group(G).items()})
    rec = _record(cfg, G)
    results.update({f"triplet.{k}": v for k, v in verify_triplet(G, rec.frame.triplet).items()})
    results["good"] = check_good(rec, rec.frame).ok
    if G.duality:
        rep = verify_flat_and_consistent(G, rec, oracle=True)
        results.update({f"saito.{k}": v for k, v in rep.items()})
    else:
        sd = saito_data(G, rec)
        results["saito.trivial"] = sd.trivial
    if G.coxeter:
        cd = coxeter_data(G, rec)
        Cs = satake_structure_constants(rec, cd.eta_tilde, cd.eta)
        results["coxeter.gradient"] = cd.checks["gradient"]
        results["coxeter.satake_eq_direct"] = Cs == saito_data(G, rec).C
    em.doc["verify"] = results
    for k, v in results.items():
        em.line(f"{k}: {'ok' if v else 'FAIL'}")
    ok = all(results.values())
    em.line("PASS" if ok else "FAIL")
    return ok


_DISPATCH = {
    "group-info": cmd_group_info,
    "triplet": cmd_triplet,
    "good-invariants": cmd_good_invariants,
    "saito": cmd_saito,
    "coxeter-potential": cmd_coxeter,
    "verify": cmd_verify,
}


def _run(argv):
    try:
        cfg = parse_config(argv)
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else 2), "", None
    em = Emitter(cfg.fmt)
    try:
        if cfg.command == "list-groups":
            cmd_list_groups(cfg, em)
            ok = True
        else:
            name = parse_group_name(cfg.group, cfg.command)
            G = catalog_group(name)
            ok = _DISPATCH[cfg.command](cfg, G, em)
            ok = True if ok is None else ok
    except DomainError as e:
        return 1, f"error: {type(e).__name__}: {e}\n", cfg
    return (0 if ok else 1), em.render(), cfg


def run_command(argv):
    """Returns (exit code, rendered document or error message)."""
    code, text, _ = _run(argv)
    return code, text


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    code, text, cfg = _run(argv)
    if text.startswith("error:"):
        sys.stderr.write(text)
    elif text:
        if cfg is not None and cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
