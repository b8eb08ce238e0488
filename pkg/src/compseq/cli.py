"""``compseq`` command-line frontend.

Exit codes: 0 success, 1 verification failure, 2 usage/config error,
3 I/O error, 4 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .algebra import FieldPoly, GaloisField, make_field
from .algebra.field import CONFIG_ENV, load_primitive_table
from .autocorr import TraceSpectrum, orthogonality_witness, evaluate_spectrum, two_level_witness
from .construct import (
    DEFAULT_FAMILY_CAP,
    SequenceSet,
    build_ccc,
    build_css,
    ccc_tail,
    chain_spec,
    css_head,
    delta_linear_sample,
    delta_quadratic,
    enumerate_family,
    rate_report,
)
from .hadamard import (
    PhaseMatrix,
    bh_from_sequence,
    dft_matrix,
    field_hadamard,
    seed_pu_matrix,
    verify_bh,
    verify_pu,
)
from .permpoly import EnumerationCapError, enumerate_semi_normalized
from .verify import min_hamming_distance, pmepr, verify_ccc, verify_css

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CAP = 4


class UsageError(Exception):
    pass


class CapError(Exception):
    pass


@dataclass
class RunConfig:
    """Everything a run depends on; equal configs give byte-identical output."""

    command: str
    action: str | None = None
    params: dict = field(default_factory=dict)
    json_output: bool = False
    config_path: str | None = None
    output: str | None = None
    input: str | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        params = {
            k: v
            for k, v in vars(ns).items()
            if k not in ("command", "action", "json", "config", "output", "input")
        }
        return cls(
            command=ns.command,
            action=getattr(ns, "action", None),
            params=params,
            json_output=ns.json,
            config_path=ns.config or os.environ.get(CONFIG_ENV),
            output=getattr(ns, "output", None),
            input=getattr(ns, "input", None),
        )


class _Context:
    def __init__(self, config: RunConfig, out):
        self.config = config
        self.out = out
        self.overrides = {}
        if config.config_path:
            try:
                self.overrides = load_primitive_table(config.config_path)
            except OSError as exc:
                raise OSError(f"cannot read config {config.config_path}: {exc}") from exc
            except (ValueError, KeyError, AttributeError) as exc:
                raise UsageError(f"malformed config {config.config_path}: {exc}") from exc

    def field(self, p: int, n: int) -> GaloisField:
        return make_field(p, n, self.overrides.get((p, n)))

    def emit(self, payload: dict, text: str) -> None:
        if self.config.json_output:
            self.out.write(json.dumps(payload, sort_keys=True) + "\n")
        else:
            self.out.write(text + "\n")

    def write_json(self, obj) -> None:
        path = self.config.output
        with open(path, "w") as fh:
            json.dump(obj, fh, sort_keys=True)
            fh.write("\n")

    def read_json(self, path: str | None = None):
        path = path or self.config.input
        if path is None:
            raise UsageError("--input is required")
        with open(path) as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise UsageError(f"{path} is not valid JSON: {exc}") from exc


# -- argument parsing helpers ----------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(s) for s in text.replace(" ", "").split(",") if s]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_linear(text: str) -> tuple[dict, int]:
    """``"k:i=c,...,const=c"`` into ({(k, i): c}, const)."""
    coeffs, const = {}, 0
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"bad linear term {item!r}")
        try:
            if key == "const":
                const = int(val)
            else:
                k, i = key.split(":")
                coeffs[(int(k), int(i))] = int(val)
        except ValueError as exc:
            raise UsageError(f"bad linear term {item!r}") from exc
    return coeffs, const


def _parse_pp_list(text: str | None, F: GaloisField, count: int) -> list:
    """Semicolon-separated items; each is an index into the semi-normalized
    list or a comma-separated coefficient vector.  One item is broadcast."""
    if text is None:
        return [None] * count
    items = [s.strip() for s in text.split(";") if s.strip()]
    if len(items) == 1:
        items = items * count
    if len(items) != count:
        raise UsageError(f"expected {count} permutation polynomials, got {len(items)}")
    out = []
    catalogue = None
    for item in items:
        if "," in item:
            g = FieldPoly(F, tuple(_int_list(item)))
        else:
            if catalogue is None:
                try:
                    catalogue = enumerate_semi_normalized(F)
                except EnumerationCapError as exc:
                    raise UsageError(f"{exc}; pass coefficients instead of an index") from exc
            idx = int(item)
            if not 0 <= idx < len(catalogue):
                raise UsageError(f"polynomial index {idx} outside 0..{len(catalogue) - 1}")
            g = catalogue[idx]
        table = np.asarray(g.table())
        if len(np.unique(table)) != F.order:
            raise UsageError(f"{g} is not a permutation polynomial")
        out.append(table)
    return out


# -- commands --------------------------------------------------------------

def _cmd_pp(ctx: _Context) -> int:
    P = ctx.config.params
    F = ctx.field(P["p"], P["n"])
    try:
        polys = enumerate_semi_normalized(F, max_order=P["cap"])
    except EnumerationCapError as exc:
        raise CapError(str(exc)) from exc
    payload = {"p": F.p, "n": F.n, "count": len(polys), "polynomials": [list(g.coeffs) for g in polys]}
    ctx.emit(payload, "\n".join(f"{i}: {g}" for i, g in enumerate(polys)))
    return EXIT_OK


def _cmd_bh(ctx: _Context) -> int:
    obj = ctx.read_json()
    try:
        M = PhaseMatrix.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed phase matrix: {exc}") from exc
    rep = verify_bh(M)
    witness = None if rep.witness is None else list(rep.witness)
    ctx.emit({"pass": rep.ok, "witness": witness}, "PASS" if rep.ok else f"FAIL rows {witness}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def _chain_from_params(ctx: _Context) -> tuple[list[PhaseMatrix], int, int, int]:
    P = ctx.config.params
    if P.get("chain"):
        obj = ctx.read_json(P["chain"])
        try:
            q = int(obj["q"])
            mats = [PhaseMatrix(q, np.array(ph)) for ph in obj["matrices"]]
            return mats, int(obj["p"]), int(obj.get("n", 1)), len(mats) - 1
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"malformed chain file: {exc}") from exc
    if P.get("p") is None or P.get("m") is None:
        raise UsageError("give --chain or --p/--n/--m")
    p, n, m = P["p"], P["n"], P["m"]
    seed = _seed_matrix(ctx, P["seed_matrix"], p, n, P.get("q"))
    return [seed] * (m + 1), p, n, m


def _cmd_pu(ctx: _Context) -> int:
    mats, p, n, m = _chain_from_params(ctx)
    try:
        M = seed_pu_matrix(mats, p, n, m)
        rep = verify_pu(M)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    expected = (p**n) ** (m + 1)
    ok = rep.ok and rep.c == expected
    witness = None if rep.witness is None else list(rep.witness)
    ctx.emit(
        {"pass": ok, "c": rep.c, "expected": expected, "witness": witness},
        f"PASS c={rep.c}" if ok else f"FAIL c={rep.c} expected={expected} witness={witness}",
    )
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_autocorr(ctx: _Context) -> int:
    P = ctx.config.params
    F = ctx.field(P["p"], P["n"])
    try:
        hs = TraceSpectrum.parse(F, P["spectrum"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    s = evaluate_spectrum(hs)
    shift = two_level_witness(s, F.p)
    lam = orthogonality_witness(hs)
    ok = shift is None
    payload = {"pass": ok, "witness": shift, "orthogonality": lam is None, "orthogonality_witness": lam, "period": len(s)}
    ctx.emit(payload, "PASS" if ok else f"FAIL at shift {shift}")
    return EXIT_OK if ok else EXIT_FAIL


def _seed_matrix(ctx: _Context, kind: str, p: int, n: int, q: int | None) -> PhaseMatrix:
    Q = p**n
    if kind == "dft":
        return dft_matrix(Q, q or Q)
    if kind == "field":
        q = q or (p if p != 2 else 2)
        return field_hadamard(ctx.field(p, n), q)
    if kind.startswith("sequence:"):
        obj = ctx.read_json(kind.split(":", 1)[1])
        seq = obj["sequence"] if isinstance(obj, dict) else obj
        sq = q or (obj.get("q", p) if isinstance(obj, dict) else p)
        M = bh_from_sequence(seq, sq)
        if M.order != Q:
            raise UsageError(f"sequence gives a matrix of order {M.order}, expected {Q}")
        return M
    raise UsageError(f"unknown seed matrix {kind!r}")


def _scale_table(M: PhaseMatrix, F: GaloisField, kind: str, d: int, table: np.ndarray) -> np.ndarray:
    if d == 1:
        return table
    if kind == "field":
        if not 1 <= d < F.order:
            raise UsageError(f"scale {d} is not a nonzero field element")
        return np.asarray(F.mul(d, table))
    scaled = (d * table) % M.order
    if len(np.unique(scaled)) != M.order:
        raise UsageError(f"scale {d} is not a unit modulo {M.order}")
    return scaled


def _cmd_construct(ctx: _Context) -> int:
    P = ctx.config.params
    p, n, m = P["p"], P["n"], P["m"]
    if m < 1:
        raise UsageError("--m must be at least 1")
    F = ctx.field(p, n)
    kind = P["seed_matrix"]
    try:
        H = _seed_matrix(ctx, kind, p, n, P.get("q"))
        q = H.q
        left = _parse_pp_list(P.get("pp_left"), F, m - 1)
        right = _parse_pp_list(P.get("pp_right"), F, m - 1)
        scales = _int_list(P["scale"]) if P.get("scale") else [1] * (m - 1)
        if len(scales) == 1:
            scales = scales * (m - 1)
        if len(scales) != m - 1:
            raise UsageError(f"expected {m - 1} scale factors")
        quads = []
        for k in range(m - 1):
            gl = left[k] if left[k] is not None else np.arange(F.order)
            quads.append(delta_quadratic(H, _scale_table(H, F, kind, scales[k], gl), right[k], k=k + 1))
        linear = None
        if P.get("linear"):
            coeffs, const = _parse_linear(P["linear"])
            linear = delta_linear_sample(p, n, m, q, coeffs, const)
        perm = _int_list(P["perm"]) if P.get("perm") else None
        spec = chain_spec(p, n, m, q, quads, linear, perm, seed=kind.split(":")[0])
        head = _parse_pp_list(P.get("pp_head"), F, 1)[0]
        h0 = css_head(H, head)
        if ctx.config.action == "css":
            S = build_css(spec, h0)
        else:
            tail = _parse_pp_list(P.get("pp_tail"), F, 1)[0]
            S = build_ccc(spec, h0, ccc_tail(H, tail))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    verified = None
    if not P.get("no_verify"):
        rep = verify_css(S) if S.role == "css" else verify_ccc(S)
        verified = rep.ok
        if not rep.ok:
            ctx.emit({"pass": False, "witness": rep.witness}, f"FAIL {rep.witness}; nothing written")
            return EXIT_FAIL
    obj = S.to_json()
    obj["verified"] = verified
    if ctx.config.output:
        ctx.write_json(obj)
        ctx.emit(
            {"pass": verified, "output": ctx.config.output, "count": len(S.sequences), "length": S.length},
            f"wrote {len(S.sequences)} sequences of length {S.length} to {ctx.config.output}",
        )
    else:
        ctx.out.write(json.dumps(obj, sort_keys=True) + "\n")
    return EXIT_OK


def _load_set(ctx: _Context, role: str | None = None) -> SequenceSet:
    obj = ctx.read_json()
    try:
        if isinstance(obj, list):
            obj = {"q": None, "sequences": obj}
        if role is not None:
            obj = dict(obj, role=role)
        if obj.get("q") is None:
            seqs = np.asarray(obj["sequences"])
            obj["q"] = int(seqs.max()) + 1 if seqs.size else 2
        return SequenceSet.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed sequence set: {exc}") from exc


def _cmd_verify(ctx: _Context) -> int:
    S = _load_set(ctx, ctx.config.action)
    rep = verify_css(S) if S.role == "css" else verify_ccc(S)
    ctx.emit(rep.to_json(), "PASS" if rep.ok else f"FAIL {json.dumps(rep.witness, sort_keys=True)}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_enumerate(ctx: _Context) -> int:
    P = ctx.config.params
    p, m, cap = P["p"], P["m"], P["cap"]
    try:
        res = enumerate_family(p, m, cap=cap if P["exhaustive"] else 0)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if P["exhaustive"] and not res.exhaustive:
        raise CapError(f"closed-form count {res.formula} exceeds cap {cap}")
    payload = {"p": p, "m": m, "count": res.count, "formula": res.formula, "exhaustive": res.exhaustive}
    if res.exhaustive:
        payload["matches_formula"] = res.matches
    if ctx.config.output and res.exhaustive:
        ctx.write_json({"q": p, "p": p, "n": 1, "m": m, "role": "css", "length": p**m,
                        "sequences": res.sequences.tolist(), "provenance": {"family": "semi-normalized", "count": res.count}})
    ctx.emit(payload, str(res.count))
    if res.exhaustive and not res.matches:
        return EXIT_FAIL
    return EXIT_OK


def _cmd_rates(ctx: _Context) -> int:
    P = ctx.config.params
    try:
        r = rate_report(P["p"], P["m"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "pmepr_bound": r.pmepr_bound,
        "subcarriers": r.subcarriers,
        "info_rate": round(r.info_rate, 3),
        "code_rate": round(r.code_rate, 3),
        "count": r.count,
    }
    ctx.emit(payload, f"({r.pmepr_bound}, {r.subcarriers}, {r.info_rate:.3f}, {r.code_rate:.3f})")
    return EXIT_OK


def _cmd_pmepr(ctx: _Context) -> int:
    S = _load_set(ctx)
    os_ = ctx.config.params["oversample"]
    try:
        vals = [pmepr(f, S.q, os_) for f in S.sequences]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"values": [round(v, 6) for v in vals], "max": round(max(vals), 6), "oversample": os_}
    ctx.emit(payload, "\n".join(f"{v:.3f}" for v in vals) + f"\nmax {max(vals):.3f}")
    return EXIT_OK


def _cmd_distance(ctx: _Context) -> int:
    S = _load_set(ctx)
    try:
        d = min_hamming_distance(S.sequences)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ctx.emit({"min_distance": d, "count": len(S.sequences)}, str(d))
    return EXIT_OK


COMMANDS = {
    "pp": _cmd_pp,
    "bh": _cmd_bh,
    "pu": _cmd_pu,
    "autocorr": _cmd_autocorr,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "enumerate": _cmd_enumerate,
    "rates": _cmd_rates,
    "pmepr": _cmd_pmepr,
    "distance": _cmd_distance,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--config", default=argparse.SUPPRESS, help=f"JSON settings file (default: ${CONFIG_ENV})")

    ap = argparse.ArgumentParser(prog="compseq", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    pp = sub.add_parser("pp", parents=[common], help="permutation polynomials")
    pp.add_argument("action", choices=["list"])
    pp.add_argument("--p", type=int, required=True)
    pp.add_argument("--n", type=int, default=1)
    pp.add_argument("--cap", type=int, default=9, help="largest field order to enumerate")

    bh = sub.add_parser("bh", parents=[common], help="Butson-Hadamard check")
    bh.add_argument("action", choices=["verify"])
    bh.add_argument("--input", required=True)

    pu = sub.add_parser("pu", parents=[common], help="para-unitarity check of a seed chain")
    pu.add_argument("action", choices=["check"])
    pu.add_argument("--chain")
    pu.add_argument("--p", type=int)
    pu.add_argument("--n", type=int, default=1)
    pu.add_argument("--m", type=int)
    pu.add_argument("--q", type=int)
    pu.add_argument("--seed-matrix", default="dft")

    ac = sub.add_parser("autocorr", parents=[common], help="2-level autocorrelation check")
    ac.add_argument("action", choices=["check"])
    ac.add_argument("--p", type=int, required=True)
    ac.add_argument("--n", type=int, required=True)
    ac.add_argument("--spectrum", default="1:1", help='"r:beta,r:beta,..."')

    co = sub.add_parser("construct", parents=[common], help="build a CSS or CCC")
    co.add_argument("action", choices=["css", "ccc"])
    co.add_argument("--p", type=int, required=True)
    co.add_argument("--n", type=int, default=1)
    co.add_argument("--m", type=int, required=True)
    co.add_argument("--q", type=int)
    co.add_argument("--seed-matrix", default="dft", help="dft | field | sequence:<file>")
    co.add_argument("--pp-left", help="index or coefficients per k, ';'-separated")
    co.add_argument("--pp-right")
    co.add_argument("--pp-head")
    co.add_argument("--pp-tail")
    co.add_argument("--scale", help="multipliers d_k, comma-separated")
    co.add_argument("--linear", help='"k:i=c,...,const=c"')
    co.add_argument("--perm", help="variable permutation, comma-separated")
    co.add_argument("--no-verify", action="store_true")
    co.add_argument("--output")

    ve = sub.add_parser("verify", parents=[common], help="exact CSS/CCC verification")
    ve.add_argument("action", choices=["css", "ccc"])
    ve.add_argument("--input", required=True)

    en = sub.add_parser("enumerate", parents=[common], help="count the semi-normalized family")
    en.add_argument("--p", type=int, required=True)
    en.add_argument("--m", type=int, required=True)
    en.add_argument("--exhaustive", action="store_true")
    en.add_argument("--cap", type=int, default=DEFAULT_FAMILY_CAP)
    en.add_argument("--output")

    ra = sub.add_parser("rates", parents=[common], help="PMEPR bound and rates")
    ra.add_argument("--p", type=int, required=True)
    ra.add_argument("--m", type=int, required=True)

    pm = sub.add_parser("pmepr", parents=[common], help="oversampled PMEPR of each sequence")
    pm.add_argument("--input", required=True)
    pm.add_argument("--oversample", type=int, default=8)

    di = sub.add_parser("distance", parents=[common], help="minimum Hamming distance")
    di.add_argument("--input", required=True)
    return ap


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    ns.json = getattr(ns, "json", False)
    ns.config = getattr(ns, "config", None)
    return RunConfig.from_args(ns)


def run(config: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        ctx = _Context(config, out)
        return COMMANDS[config.command](ctx)
    except UsageError as exc:
        print(f"compseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapError as exc:
        print(f"compseq: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"compseq: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
