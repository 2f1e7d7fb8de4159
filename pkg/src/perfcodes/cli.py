"""
Command-line entry point.

Exit status: 0 on success, 1 when a verification fails (the offending word
is printed as a certificate), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import errors
from .census import generate_assemblies, lower_bound
from .codespace import is_perfect, min_distance, rank
from .combiner import combine
from .components import build_mollard_phelps, build_phelps, component_shift, component_verify
from .decomposer import decompose
from .formats import (
    format_code,
    format_partition,
    load_assembly,
    load_code,
    load_component,
    resolve_partition,
    resolve_qg,
    save_code,
    save_component,
    save_decomposition,
    str_to_word,
    word_to_str,
)
from .gfq import field_make
from .hamming import hamming_code, perfect_partition
from .quasigroup import qg_count

# verification failures map to exit 1, everything else in CodeError to 2
FAILURES = (
    errors.NotPerfect,
    errors.NotPerfectResult,
    errors.ComponentLawViolation,
    errors.OuterNotPerfect,
    errors.StructureViolation,
)


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, text: str, **data) -> None:
        if self.as_json:
            print(json.dumps(data, sort_keys=True))
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cert(word) -> str:
    if word is None:
        return ""
    if isinstance(word[0], tuple):
        return " ".join(word_to_str(w) for w in word)
    return word_to_str(word)


def _write_or_print(out: _Out, args, text: str, **data) -> None:
    if args.output:
        Path(args.output).write_text(text)
        out.emit(f"wrote {args.output}", path=args.output, **data)
    else:
        out.emit(text, **data)


def cmd_hamming(args, out):
    C = hamming_code(args.q, args.r)
    _write_or_print(out, args, format_code(C), q=C.q, n=C.n, size=len(C))
    return 0


def cmd_verify(args, out):
    C = load_code(args.code)
    check = is_perfect(C)
    if check:
        out.emit(f"perfect q={C.q} n={C.n} size={len(C)}", perfect=True, size=len(C))
        return 0
    out.emit(
        f"not perfect ({check.reason})\ncertificate: {_cert(check.witness)}",
        perfect=False,
        reason=check.reason,
        certificate=_cert(check.witness),
    )
    return 1


def cmd_mindist(args, out):
    d = min_distance(load_code(args.code))
    out.emit(str(d), min_distance=d)
    return 0


def cmd_rank(args, out):
    C = load_code(args.code)
    k = rank(C)
    out.emit(str(k), rank=k, n=C.n)
    return 0


def cmd_partition(args, out):
    P = perfect_partition(args.q, args.n0)
    _write_or_print(out, args, format_partition(P), q=P.q, n0=P.n0, parts=len(P.parts))
    return 0


def cmd_qg_count(args, out):
    c = qg_count(args.m, args.order, workers=args.threads)
    out.emit(str(c), m=args.m, order=args.order, count=c)
    return 0


def _parse_manifest(path: Path) -> dict[str, list[str]]:
    entries = {}
    for ln in path.read_text().splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            key, *values = ln.split()
            entries[key] = values
    return entries


def cmd_component(args, out):
    path = Path(args.manifest)
    base = path.parent
    e = _parse_manifest(path)
    try:
        q = int(e["q"][0])
        F = field_make(q)
        mu = str_to_word(e["mu"][0], q)
        v = resolve_qg(e["v"][0], F, base)
        h = resolve_qg(e["h"][0], F, base)
        V = [resolve_qg(tok, F, base) for tok in e["V"]]
        if len(V) == 1 and len(mu) > 1:
            V = V * len(mu)
        if args.kind == "mollard":
            Csharp = load_code(base / e["csharp"][0])
            H = [resolve_qg(tok, F, base) for tok in e["H"]]
            if len(H) == 1 and Csharp.n > 1:
                H = H * Csharp.n
            K = build_mollard_phelps(mu, Csharp, v, h, V, H, F, method=args.method)
        else:
            k = int(e["k"][0]) if "k" in e else None
            parts = [resolve_partition(tok, q, k, base) for tok in e["partitions"]]
            if len(parts) == 1:
                parts = parts * (len(mu) + 1)
            Q = resolve_qg(e["Q"][0], F, base)
            K = build_phelps(mu, parts, v, h, V, Q, F, method=args.method)
    except KeyError as exc:
        raise errors.FormatError(f"manifest is missing the {exc.args[0]!r} line") from None
    check = component_verify(K)
    if args.output:
        save_component(args.output, K)
    summary = f"component mu={word_to_str(K.mu)} size={len(K)} n={K.layout.n} verified={bool(check)}"
    if not check:
        summary += f"\nfailed: {check.reason}\ncertificate: {_cert(check.witness)}"
    out.emit(summary, size=len(K), n=K.layout.n, verified=bool(check), path=args.output)
    return 0 if check else 1


def cmd_combine(args, out):
    A = load_assembly(args.manifest)
    C = combine(A)
    _write_or_print(out, args, format_code(C), q=C.q, n=C.n, size=len(C), perfect=True)
    return 0


def cmd_shift(args, out):
    K = load_component(args.component)
    target = str_to_word(args.mu, K.code.q)
    S = component_shift(K, target)
    check = component_verify(S)
    if args.output:
        save_component(args.output, S)
        out.emit(f"wrote {args.output}", path=args.output, size=len(S), verified=bool(check))
    else:
        out.emit(format_code(S.code, [f"mu={word_to_str(S.mu)}"]), size=len(S), verified=bool(check))
    return 0 if check else 1


def cmd_decompose(args, out):
    C = load_code(args.code)
    dec = decompose(C, args.r, seed=args.seed)
    directory = Path(args.output or f"{args.code}.decomposition")
    save_decomposition(directory, dec)
    L = dec.layout
    out.emit(
        f"{L.q} {L.m} {L.r} {L.t} {L.s} {L.l} {L.n0}\ncomponents={len(dec.components)} bundle={directory}",
        layout=[L.q, L.m, L.r, L.t, L.s, L.l, L.n0],
        components=len(dec.components),
        bundle=str(directory),
    )
    return 0


def cmd_bound(args, out):
    rep = lower_bound(args.n, args.q)
    text = rep.line()
    if rep.diagnostic:
        text += f"\n# {rep.diagnostic}"
    out.emit(
        text,
        n=rep.n,
        q=rep.q,
        t=rep.t,
        Q=rep.Qcount,
        R=rep.R,
        bound=str(rep.bound),
        provenance=rep.provenance,
        printed_R=str(rep.printed_R),
        diagnostic=rep.diagnostic,
    )
    return 0


def cmd_generate(args, out):
    count = 0
    seen = set()
    directory = Path(args.output) if args.output else None
    if directory:
        directory.mkdir(parents=True, exist_ok=True)
    for A in generate_assemblies(args.n, args.q, args.limit):
        C = combine(A)
        if C in seen:
            raise errors.StructureViolation("duplicate code generated")
        seen.add(C)
        if directory:
            save_code(directory / f"code_{count:04d}.code", C)
        count += 1
    out.emit(f"{args.n} {args.q} {count}", n=args.n, q=args.q, count=count)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perfcodes", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--json", action="store_true", help="machine-readable one-line summaries")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled verification")
    p.add_argument("--threads", type=int, default=1, help="worker processes where supported")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, output=False):
        sp = sub.add_parser(name)
        for arg, kind in positional:
            sp.add_argument(arg, type=kind)
        if output:
            sp.add_argument("-o", "--output")
        sp.set_defaults(func=func)
        return sp

    add("hamming", cmd_hamming, ("q", int), ("r", int), output=True)
    add("verify", cmd_verify, ("code", str))
    add("mindist", cmd_mindist, ("code", str))
    add("rank", cmd_rank, ("code", str))
    add("partition", cmd_partition, ("q", int), ("n0", int), output=True)
    add("qg-count", cmd_qg_count, ("m", int), ("order", int))
    sp = sub.add_parser("component")
    sp.add_argument("kind", choices=["mollard", "phelps"])
    sp.add_argument("manifest")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_component)
    sp.add_argument("--method", choices=["auto", "filter", "solve"], default="auto")
    add("combine", cmd_combine, ("manifest", str), output=True)
    add("shift", cmd_shift, ("component", str), ("mu", str), output=True)
    add("decompose", cmd_decompose, ("code", str), ("r", int), output=True)
    add("bound", cmd_bound, ("n", int), ("q", int))
    sp = add("generate", cmd_generate, ("n", int), ("q", int), output=True)
    sp.add_argument("--limit", type=int, default=None)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed < 0 or args.seed >= 2**64:
        print("perfcodes: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(message)s")
    out = _Out(args.json)
    try:
        return args.func(args, out)
    except FAILURES as exc:
        cert = getattr(exc, "certificate", None)
        msg = f"verification failed: {exc}"
        if cert is not None:
            msg += f"\ncertificate: {_cert(cert)}"
        out.emit(msg, ok=False, error=type(exc).__name__, message=str(exc), certificate=_cert(cert) if cert else None)
        return 1
    except (errors.CodeError, OSError) as exc:
        print(f"perfcodes: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
