"""Command-line front end.

    taureg invariants ALG MOD
    taureg component ALG --g z1,...,zn
    taureg classify-triangular ALG --dim d1,...,dn
    taureg check {nakayama,gentle,hereditary,ig1} ALG
    taureg witness ALG

Common flags: --prime, --seed (falls back to $TAUREG_SEED), --trials,
--json and, where a module is produced, --dump-witness PATH.

Exit codes: 0 success, 1 parse or validation error, 2 precondition not
met, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from itertools import combinations

from . import formats
from .algebra import (
    build_algebra,
    chen_lu_trace,
    cyclic_nakayama_parameters,
    is_gentle,
    nakayama_symmetry_criterion,
    quotient_by_idempotent,
)
from .errors import InternalInconsistency, NotGentle, PreconditionError, TauRegError, ValidationError
from .linalg import DEFAULT_PRIME
from .presentations import DEFAULT_SEED
from .rep import g_vector, invariants_E, inj_dim_at_most, proj_dim_at_most
from .tauregular import (
    arrow_ranks,
    component_from_gvector,
    default_pool,
    hereditary_check,
    ig1_all_quotients,
    ig1_check,
    interval_pool,
    is_tau_minus_regular,
    is_tau_regular,
    triangular_unique_component,
    witness_search,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RunConfig:
    prime: int = DEFAULT_PRIME
    seed: int = DEFAULT_SEED
    trials: int = 5
    output: str = "text"

    def __post_init__(self):
        if self.prime <= 2 ** 16 or not is_probable_prime(self.prime):
            raise ValidationError(f"--prime must be a prime larger than 2^16, got {self.prime}")
        if self.trials < 1:
            raise ValidationError("--trials must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError("--seed must fit in 64 bits")
        if self.output not in ("text", "json"):
            raise ValidationError("output must be text or json")

    def rng(self):
        return random.Random(self.seed)


def _int_list(text, what):
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise ValidationError(f"{what} must be a comma separated list of integers") from None


def _yn(b):
    return "yes" if b else "no"


def _load_algebra(path, cfg):
    return build_algebra(formats.read_algebra(path), cfg.prime)


def _dump(module, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(formats.dump_module(module))


# -- commands ---------------------------------------------------------------

def cmd_invariants(args, cfg):
    alg = _load_algebra(args.algebra, cfg)
    M = formats.read_module(args.module, alg)
    rng = cfg.rng()
    E, Em, e = invariants_E(M)
    reg = is_tau_regular(M, cfg.trials, rng)
    regm = is_tau_minus_regular(M, cfg.trials, rng)
    # c is only reported where it is pinned down
    if reg:
        c = E
    elif regm:
        c = Em
    elif e == 0:
        c = 0
    else:
        c = None
    report = {
        "dimvec": list(M.dims),
        "g_vector": list(g_vector(M)),
        "c": c,
        "e": e,
        "E": E,
        "E_minus": Em,
        "tau_regular": reg,
        "tau_minus_regular": regm,
        "pd_le_1": proj_dim_at_most(M, 1),
        "id_le_1": inj_dim_at_most(M, 1),
    }
    lines = [
        f"dimvec          {tuple(M.dims)}",
        f"g-vector        {tuple(report['g_vector'])}",
        f"c               {'?' if c is None else c}",
        f"e               {e}",
        f"E               {E}",
        f"E-              {Em}",
        f"tau-regular     {_yn(reg)}",
        f"tau^- -regular  {_yn(regm)}",
        f"pd <= 1         {_yn(report['pd_le_1'])}",
        f"id <= 1         {_yn(report['id_le_1'])}",
    ]
    return {"verdict": {"tau_regular": reg, "tau_minus_regular": regm}, "certificate": report}, lines


def cmd_component(args, cfg):
    alg = _load_algebra(args.algebra, cfg)
    z = _int_list(args.g, "--g")
    pair = component_from_gvector(alg, z, cfg.trials, cfg.rng())
    comp = pair.component
    _dump(comp.generic_witness, args.dump_witness)
    report = {
        "g_input": list(z),
        "dimvec": list(comp.dimvec),
        "g_vector": list(comp.gvec),
        "proj": list(pair.proj),
        "E": comp.E_value,
        "c": comp.E_value,
        "presentation": {"p1": list(comp.pair[0]), "p0": list(comp.pair[1])},
        "witness": formats.dump_module(comp.generic_witness),
    }
    lines = [
        f"dimvec          {comp.dimvec}",
        f"g(Z)            {comp.gvec}",
        f"proj [P_f]      {pair.proj}",
        f"E(Z) = c(Z)     {comp.E_value}",
        f"[P1], [P0]      {comp.pair[0]}, {comp.pair[1]}",
    ]
    if not any(comp.dimvec):
        lines.append("zero component")
    return {"verdict": {"dimvec": list(comp.dimvec), "g_vector": list(comp.gvec), "proj": list(pair.proj)},
            "certificate": report}, lines


def cmd_classify(args, cfg):
    alg = _load_algebra(args.algebra, cfg)
    d = _int_list(args.dim, "--dim")
    Z = triangular_unique_component(alg, d, cfg.trials, cfg.rng())
    _dump(Z.generic_witness, args.dump_witness)
    ranks = arrow_ranks(Z.generic_witness)
    report = {
        "dimvec": list(Z.dimvec),
        "g_vector": list(Z.gvec),
        "E": Z.E_value,
        "arrow_ranks": ranks,
        "witness": formats.dump_module(Z.generic_witness),
    }
    lines = [
        f"dimvec          {Z.dimvec}",
        f"g(Z_d)          {Z.gvec}",
        f"E(Z_d)          {Z.E_value}",
        "arrow ranks     " + ", ".join(f"{k}: {v}" for k, v in ranks.items()),
    ]
    return {"verdict": {"arrow_ranks": ranks}, "certificate": report}, lines


def cmd_check(args, cfg):
    pres = formats.read_algebra(args.algebra)
    alg = build_algebra(pres, cfg.prime)
    kind = args.kind
    if kind == "nakayama":
        n, t = cyclic_nakayama_parameters(alg)
        if t is None:
            verdict = False
            trace = {"n": n, "t": None, "reason": "I is not a power of the arrow ideal, so A is not selfinjective"}
        else:
            verdict = nakayama_symmetry_criterion(n, t)
            trace = {"n": n, "t": t, "criterion": "t = (n-1) + n*r with r >= 0 (r >= 1 if n = 2, r >= 2 if n = 1)"}
        report = {"symmetric": verdict, "trace": trace}
        lines = [f"cyclic Nakayama n={n}, t={t}", f"symmetric: {str(verdict).lower()}"]
        return {"verdict": {"symmetric": verdict}, "certificate": report}, lines
    if kind == "gentle":
        if not is_gentle(pres):
            raise NotGentle("algebra is not gentle")
        ok, trace = chen_lu_trace(pres)
        failing = None
        for k in range(1, alg.n):
            for removed in combinations(range(1, alg.n + 1), k):
                bpres, _ = quotient_by_idempotent(alg, removed)
                if not chen_lu_trace(bpres)[0]:
                    failing = sorted(removed)
                    break
            if failing:
                break
        if not ok or failing is not None:
            symmetric = False
        else:
            symmetric = "undecided"
        report = {
            "chen_lu": ok,
            "quotient_failing_chen_lu": failing,
            "symmetric": symmetric,
            "trace": [{"relation": "*".join(r), "chain": c} for r, c in trace],
        }
        lines = ["gentle: yes", f"Chen-Lu 1-Iwanaga-Gorenstein: {_yn(ok)}"]
        if failing is not None:
            lines.append(f"fails for A/AeA with e at {failing}")
        lines.append(f"symmetric: {symmetric if isinstance(symmetric, str) else str(symmetric).lower()}")
        return {"verdict": {"symmetric": symmetric}, "certificate": report}, lines
    if kind == "hereditary":
        h = hereditary_check(alg)
        report = {"hereditary": h, "symmetric": h,
                  "note": "Irr^tau(A) = Irr(A) exactly when A is hereditary"}
        lines = [f"hereditary: {_yn(h)}"]
        return {"verdict": {"hereditary": h}, "certificate": report}, lines
    if kind == "ig1":
        ig = ig1_check(alg)
        allq, failing = ig1_all_quotients(alg)
        symmetric = False if not allq else "undecided"
        report = {"ig1": ig, "ig1_all_quotients": allq,
                  "failing_removed": sorted(failing) if failing is not None else None, "symmetric": symmetric}
        lines = [f"1-Iwanaga-Gorenstein: {_yn(ig)}", f"all quotients A/AeA: {_yn(allq)}"]
        if failing:
            lines.append(f"fails for A/AeA with e at {sorted(failing)}")
        elif failing is not None:
            lines.append("fails already for A itself")
        return {"verdict": {"ig1": ig, "ig1_all_quotients": allq}, "certificate": report}, lines
    raise ValidationError(f"unknown check {kind!r}")


def cmd_witness(args, cfg):
    alg = _load_algebra(args.algebra, cfg)
    pool = interval_pool(alg) if args.pool == "interval" else default_pool(alg)
    w = witness_search(alg, args.max_summands, pool)
    if w is None:
        report = {"found": False, "note": "no witness in the searched pool; this does not prove symmetry"}
        return {"verdict": {"found": False}, "certificate": report}, ["no witness found (inconclusive)"]
    _dump(w.module, args.dump_witness)
    label = " + ".join(w.labels)
    report = {"found": True, "summands": list(w.labels), "E": w.E, "E_minus": w.E_minus, "e": w.e,
              "kind": w.kind, "witness": formats.dump_module(w.module)}
    lines = [f"witness: {label}", f"E = {w.E}, E- = {w.E_minus}, e = {w.e}", w.kind,
             "Irr^tau(A) != Irr^tau-(A)"]
    return {"verdict": {"found": True, "witness": label}, "certificate": report}, lines


# -- argument parsing -------------------------------------------------------

def _common(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--prime", type=int, default=d if suppress else DEFAULT_PRIME)
    parser.add_argument("--seed", type=int, default=d)
    parser.add_argument("--trials", type=int, default=d if suppress else 5)
    parser.add_argument("--json", action="store_true", default=d if suppress else False)


def build_parser():
    parser = argparse.ArgumentParser(prog="taureg", description="tau-regular modules over quiver algebras")
    _common(parser, False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="E, E-, e, g-vector and regularity of a module")
    _common(p, True)
    p.add_argument("algebra")
    p.add_argument("module")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("component", help="component attached to a g-vector")
    _common(p, True)
    p.add_argument("algebra")
    p.add_argument("--g", required=True)
    p.add_argument("--dump-witness")
    p.set_defaults(func=cmd_component)

    p = sub.add_parser("classify-triangular", help="unique generically tau-regular component Z_d")
    _common(p, True)
    p.add_argument("algebra")
    p.add_argument("--dim", required=True)
    p.add_argument("--dump-witness")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check", help="algebra-level criteria")
    _common(p, True)
    p.add_argument("kind", choices=["nakayama", "gentle", "hereditary", "ig1"])
    p.add_argument("algebra")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("witness", help="search for a tau / tau^- asymmetry witness")
    _common(p, True)
    p.add_argument("algebra")
    p.add_argument("--max-summands", type=int, default=4)
    p.add_argument("--pool", choices=["default", "interval"], default="default")
    p.add_argument("--dump-witness")
    p.set_defaults(func=cmd_witness)
    return parser


def _glue_vector_flags(argv):
    """Allow '--g -1,0' by gluing vector-valued flags to their value."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--g", "--dim") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("TAUREG_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValidationError("TAUREG_SEED must be an integer") from None
    return DEFAULT_SEED


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = _glue_vector_flags(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    want_json = bool(getattr(args, "json", False))
    try:
        cfg = RunConfig(args.prime, resolve_seed(args.seed), args.trials, "json" if want_json else "text")
        result, lines = args.func(args, cfg)
    except (ValidationError, OSError) as exc:
        return _fail(exc, EXIT_INPUT, want_json, out)
    except PreconditionError as exc:
        return _fail(exc, EXIT_PRECONDITION, want_json, out)
    except InternalInconsistency as exc:
        return _fail(exc, EXIT_INTERNAL, want_json, out)
    except TauRegError as exc:
        return _fail(exc, EXIT_INTERNAL, want_json, out)
    if want_json:
        result = dict(result)
        result["seed"] = cfg.seed
        result["prime"] = cfg.prime
        result["trials"] = cfg.trials
        json.dump(result, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        out.write(f"seed: {cfg.seed}\n")
        for line in lines:
            out.write(line + "\n")
    return EXIT_OK


def _fail(exc, code, want_json, out):
    name = type(exc).__name__
    if want_json:
        json.dump({"error": name, "message": str(exc), "exit_code": code}, out, indent=2)
        out.write("\n")
    else:
        print(f"error ({name}): {exc}", file=sys.stderr)
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
