"""
Plain-text file formats.

code        line 1 ``q n``; ``#`` comment lines; one word per line as digits
quasigroup  line 1 ``m order``; line 2 the table, space separated, row-major
partition   line 1 ``q n0 parts``; then each part as a code block, blocks separated by ``--``
component   a code file with ``# mu=``, ``# t= l= n0=`` and one ``# sigma=<path>`` per block
assembly    line 1 ``q m r``; line 2 outer code path; then ``mu=<digits> file=<path>``
bundle      directory with psi.txt, layout.txt, outer.code, component_<mu>.code, manifest.txt

Symbols are written as single characters 0-9a-f, so q <= 16.  Paths inside
files are relative to the file that mentions them.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import numpy as np

from .codespace import Code, CodeParameters, MonomialTransform, Word
from .combiner import Assembly
from .components import MuComponent
from .errors import FormatError
from .gfq import FieldTable
from .hamming import PerfectPartition, perfect_partition
from .quasigroup import MultaryQuasigroup, SigmaFamily, identity_qg, qg_linear

DIGITS = "0123456789abcdef"


def word_to_str(word: Iterable[int]) -> str:
    return "".join(DIGITS[int(x)] for x in word)


def str_to_word(s: str, q: int) -> Word:
    try:
        word = tuple(int(c, 16) for c in s.strip())
    except ValueError:
        raise FormatError(f"bad word {s!r}") from None
    if any(x >= q for x in word):
        raise FormatError(f"word {s!r} has a symbol >= {q}")
    return word


def _lines(text: str) -> list[str]:
    return [ln.rstrip("\r") for ln in text.splitlines()]


# ---------- codes ----------


def format_code(C: Code, comments: Iterable[str] = ()) -> str:
    out = [f"{C.q} {C.n}"]
    out += [f"# {c}" for c in comments]
    if C.n:
        table = np.array(list(DIGITS[: C.q]))
        out += ["".join(row) for row in table[C.digits()]]
    else:
        out += [""] * len(C)
    return "\n".join(out) + "\n"


def parse_code(text: str) -> tuple[Code, list[str]]:
    """Returns the code and its comment lines (without the leading ``# ``)."""
    lines = _lines(text)
    if not lines:
        raise FormatError("empty code file")
    try:
        q, n = (int(x) for x in lines[0].split())
    except ValueError:
        raise FormatError(f"bad header {lines[0]!r}, expected 'q n'") from None
    comments, words = [], []
    for ln in lines[1:]:
        if ln.startswith("#"):
            comments.append(ln[1:].strip())
        elif ln.strip():
            w = str_to_word(ln, q)
            if len(w) != n:
                raise FormatError(f"word {ln!r} has length {len(w)}, expected {n}")
            words.append(w)
    return Code.from_words(q, n, words), comments


def save_code(path, C: Code, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_code(C, comments))


def load_code(path) -> Code:
    return parse_code(Path(path).read_text())[0]


# ---------- quasigroups ----------


def format_qg(f: MultaryQuasigroup) -> str:
    return f"{f.m} {f.order}\n" + " ".join(str(int(x)) for x in f.table) + "\n"


def parse_qg(text: str) -> MultaryQuasigroup:
    lines = [ln for ln in _lines(text) if ln.strip()]
    try:
        m, order = (int(x) for x in lines[0].split())
        values = [int(x) for ln in lines[1:] for x in ln.split()]
    except (ValueError, IndexError):
        raise FormatError("bad quasigroup file") from None
    if len(values) != order**m:
        raise FormatError(f"expected {order}^{m} table entries, got {len(values)}")
    return MultaryQuasigroup(m, order, np.array(values))


def save_qg(path, f: MultaryQuasigroup) -> None:
    Path(path).write_text(format_qg(f))


def load_qg(path) -> MultaryQuasigroup:
    return parse_qg(Path(path).read_text())


def resolve_qg(token: str, F: FieldTable, base: Path) -> MultaryQuasigroup:
    """A quasigroup reference: a file path, ``identity``, or ``linear:a1,a2,...[+c]``."""
    if token == "identity":
        return identity_qg(F.q)
    if token.startswith("linear:"):
        body = token[len("linear:") :]
        c = 0
        if "+" in body:
            body, cs = body.split("+", 1)
            c = int(cs)
        coeffs = tuple(int(x) for x in body.split(","))
        return qg_linear(F, len(coeffs), coeffs, c)
    return load_qg(base / token)


# ---------- partitions ----------


def format_partition(P: PerfectPartition) -> str:
    blocks = [format_code(part) for part in P.parts]
    return f"{P.q} {P.n0} {len(P.parts)}\n" + "--\n".join(blocks)


def parse_partition(text: str) -> PerfectPartition:
    lines = _lines(text)
    try:
        q, n0, count = (int(x) for x in lines[0].split())
    except (ValueError, IndexError):
        raise FormatError("bad partition header, expected 'q n0 parts'") from None
    blocks, cur = [], []
    for ln in lines[1:]:
        if ln.strip() == "--":
            blocks.append(cur)
            cur = []
        else:
            cur.append(ln)
    blocks.append(cur)
    if len(blocks) != count:
        raise FormatError(f"header announces {count} parts, found {len(blocks)}")
    parts = []
    for b in blocks:
        code, _ = parse_code("\n".join(b))
        if (code.q, code.n) != (q, n0):
            raise FormatError("part header does not match partition header")
        parts.append(code)
    return PerfectPartition(q, n0, tuple(parts))


def save_partition(path, P: PerfectPartition) -> None:
    Path(path).write_text(format_partition(P))


def load_partition(path) -> PerfectPartition:
    return parse_partition(Path(path).read_text())


def resolve_partition(token: str, q: int, k: int | None, base: Path) -> PerfectPartition:
    """A partition reference: a file path or ``coset`` (requires k)."""
    if token == "coset":
        if k is None:
            raise FormatError("'coset' partitions need a 'k' line in the manifest")
        return perfect_partition(q, k)
    return load_partition(base / token)


# ---------- components ----------


def save_component(path, K: MuComponent) -> None:
    """Write the component and one quasigroup file per distinct sigma_i next to it."""
    path = Path(path)
    stem = path.name.rsplit(".", 1)[0]
    refs, written = [], {}
    for f in K.sigma.sigmas:
        if f not in written:
            name = f"{stem}.sigma{len(written)}.qg"
            save_qg(path.parent / name, f)
            written[f] = name
        refs.append(written[f])
    L = K.layout
    comments = [f"mu={word_to_str(K.mu)}", f"t={L.t} l={L.l} n0={L.n0}"]
    comments += [f"sigma={ref}" for ref in refs]
    save_code(path, K.code, comments)


def load_component(path) -> MuComponent:
    path = Path(path)
    code, comments = parse_code(path.read_text())
    mu = None
    dims = {}
    sigmas = []
    for c in comments:
        if c.startswith("mu="):
            mu = str_to_word(c[3:], code.q)
        elif c.startswith("sigma="):
            sigmas.append(load_qg(path.parent / c[6:].strip()))
        elif c.startswith("t="):
            dims = dict(kv.split("=") for kv in c.split())
    if mu is None or not dims or not sigmas:
        raise FormatError(f"{path} lacks mu/t/sigma headers")
    t, l, n0 = int(dims["t"]), int(dims["l"]), int(dims["n0"])
    if len(sigmas) != t or len(mu) != t or l * t + n0 != code.n:
        raise FormatError(f"{path}: inconsistent component headers")
    layout = CodeParameters.from_blocks(code.q, t, l, n0)
    return MuComponent(code, mu, layout, SigmaFamily(tuple(sigmas)))


# ---------- assemblies ----------


def save_assembly(directory, A: Assembly, outer_name: str = "outer.code") -> Path:
    """Write outer code, components and manifest.txt into directory."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    save_code(d / outer_name, A.outer)
    L = A.layout
    lines = [f"{L.q} {L.m} {L.r}", outer_name]
    for mu in sorted(A.components):
        name = f"component_{word_to_str(mu)}.code"
        save_component(d / name, A.components[mu])
        lines.append(f"mu={word_to_str(mu)} file={name}")
    manifest = d / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n")
    return manifest


def load_assembly(path) -> Assembly:
    path = Path(path)
    lines = [ln for ln in _lines(path.read_text()) if ln.strip() and not ln.startswith("#")]
    try:
        q, m, r = (int(x) for x in lines[0].split())
    except (ValueError, IndexError):
        raise FormatError("bad manifest header, expected 'q m r'") from None
    outer = load_code(path.parent / lines[1].strip())
    components = {}
    for ln in lines[2:]:
        fields = dict(kv.split("=", 1) for kv in ln.split())
        if "mu" not in fields or "file" not in fields:
            raise FormatError(f"bad manifest line {ln!r}")
        mu = str_to_word(fields["mu"], q)
        components[mu] = load_component(path.parent / fields["file"])
    if not components:
        raise FormatError("manifest lists no components")
    layout = CodeParameters.from_mr(q, m, r)
    sigma = components[min(components)].sigma
    return Assembly(outer, components, layout, sigma)


# ---------- decomposition bundles ----------


def save_decomposition(directory, dec) -> Path:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    psi = dec.psi
    (d / "psi.txt").write_text(
        " ".join(map(str, psi.perm)) + "\n" + " ".join(map(str, psi.scale)) + "\n"
    )
    L = dec.layout
    (d / "layout.txt").write_text(f"{L.q} {L.m} {L.r} {L.t} {L.s} {L.l} {L.n0}\n")
    return save_assembly(d, dec.assembly())


def load_psi(path) -> MonomialTransform:
    lines = [ln for ln in _lines(Path(path).read_text()) if ln.strip()]
    if len(lines) != 2:
        raise FormatError("psi.txt must hold a permutation line and a scale line")
    return MonomialTransform(tuple(int(x) for x in lines[0].split()), tuple(int(x) for x in lines[1].split()))
