"""Desk-scale algorithmic information theory on the prefix-free machines.

Everything here is exact: halting probabilities are dyadic rationals kept as
integers, and enumeration order is canonical (length, then lexicographic),
so results can be compared bit for bit across runs, restarts and worker
counts.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .encodings import TreeMachine
from .reduction import combinator_eq, try_decode_bool_list
from .runtime import Halted
from .terms import CurriedSyntaxError, Term, parse_curried
from .trees import all_bit_strings, iter_trees, tree_prefix_length

__all__ = [
    "HaltingRecord", "HaltingRecords", "OmegaBound",
    "enumerate_halting", "omega_lower_bound", "omega_from_records",
    "complexity_upper_bound", "catalan", "catalan_asymptotic", "count_trees", "kraft_prefix_check",
    "read_record_file", "RecordFileError",
]

RECORD_MAGIC = "# concrete-ait halting records v1"


@dataclass(frozen=True)
class HaltingRecord:
    codeword: str
    steps: int
    output_bits: str
    output_term: str

    @classmethod
    def from_outcome(cls, codeword: str, out: Halted) -> HaltingRecord:
        return cls(codeword, out.steps, out.bits, out.text)

    def to_line(self) -> str:
        return "\t".join((self.codeword, str(self.steps), self.output_bits, self.output_term))

    @classmethod
    def from_line(cls, line: str) -> HaltingRecord:
        codeword, steps, bits, text = line.rstrip("\n").split("\t")
        return cls(codeword, int(steps), bits, text)

    @property
    def is_raw(self) -> bool:
        """True for bit-string outputs of toy machines (no term behind them)."""
        return self.output_term == self.output_bits

    def term(self) -> Term:
        return parse_curried(self.output_term)


class HaltingRecords(list):
    """A list of records plus how many strings were cut off by the step limit."""

    def __init__(self, records: Iterable[HaltingRecord] = (), step_limited: int = 0):
        super().__init__(records)
        self.step_limited = step_limited


def _order(codeword: str):
    return len(codeword), codeword


# ---------------------------------------------------------------------------
# Enumeration units.  A tree machine is explored one program at a time; any
# other machine is run on every string, one length at a time.

_MACHINE_CACHE: dict = {}


def _resolve(machine, round_budget: int):
    if not isinstance(machine, str):
        return machine
    key = (machine, round_budget)
    if key not in _MACHINE_CACHE:
        from .languages import chaitin_machine
        _MACHINE_CACHE[key] = chaitin_machine(machine, round_budget)
    return _MACHINE_CACHE[key]


def _units(m, max_len: int, method: str) -> list[str]:
    if method == "explore":
        return [p for n in range(1, max_len + 1, 2) for p in iter_trees(n)]
    return [str(n) for n in range(1, max_len + 1)]


def _run_unit(machine, unit: str, max_len: int, step_limit: int,
              method: str, round_budget: int) -> tuple[list[HaltingRecord], int]:
    m = _resolve(machine, round_budget)
    records = []
    limited = 0
    if method == "explore":
        def on_limit(prefix: str):
            nonlocal limited
            limited += (1 << (max_len - len(prefix) + 1)) - 1

        for codeword, out in m.explore_program(unit, max_len, step_limit, on_limit):
            records.append(HaltingRecord.from_outcome(codeword, out))
    else:
        for codeword in all_bit_strings(int(unit), int(unit)):
            out = m.run(codeword, step_limit)
            if out.halted:
                records.append(HaltingRecord.from_outcome(codeword, out))
            elif out.reason is not None and out.reason.value == "step-limit":
                limited += 1
    return records, limited


def _run_unit_star(args):
    return _run_unit(*args)


# ---------------------------------------------------------------------------
# Record files


class RecordFileError(ValueError):
    pass


def _header(name: str, max_len: int, step_limit: int, method: str) -> str:
    return f"# machine={name} max_len={max_len} step_limit={step_limit} method={method}"


def read_record_file(path: str):
    """Parse a record file.

    Returns ``(header, units, records, step_limited, committed_bytes)``
    where only units closed by a ``# done`` line count; anything after the
    last one is an interrupted unit.
    """
    header = None
    units: list[str] = []
    records: list[HaltingRecord] = []
    pending: list[HaltingRecord] = []
    limited = 0
    committed = 0
    with open(path, "rb") as fh:
        data = fh.read()
    offset = 0
    for raw in data.splitlines(keepends=True):
        offset += len(raw)
        if not raw.endswith(b"\n"):
            break  # torn final line
        line = raw.decode("utf-8").rstrip("\n")
        if line.startswith("# machine="):
            header = line
            committed = offset
        elif line.startswith("# done "):
            parts = line.split()
            units.append(parts[2])
            limited += int(parts[3].split("=", 1)[1])
            records.extend(pending)
            pending = []
            committed = offset
        elif line.startswith("#") or not line:
            if header is None:
                committed = offset
        else:
            try:
                pending.append(HaltingRecord.from_line(line))
            except ValueError as exc:
                raise RecordFileError(f"bad record line {line!r}") from exc
    if header is None:
        raise RecordFileError(f"{path}: no header line")
    records.sort(key=lambda r: _order(r.codeword))
    return header, units, records, limited, committed


def enumerate_halting(machine, max_len: int, step_limit: int, *,
                      record_file: str | os.PathLike | None = None, resume: bool = False,
                      workers: int = 1, method: str | None = None,
                      round_budget: int = 10_000) -> HaltingRecords:
    """All halting codewords of length ``1..max_len``, in length-lex order.

    ``machine`` is a name (``simple``, ``ext``, ``pf-keraia``, or a
    blank-endmarker name for its eliminated machine) or a machine object.
    ``method`` is ``"explore"`` (tree machines only: resume blocked runs bit
    by bit) or ``"brute"`` (run every string); the result is the same.

    With ``record_file`` every finished unit is appended to the file, and
    ``resume=True`` skips units the file already holds.
    """
    if max_len < 0 or step_limit < 1:
        raise ValueError("need max_len >= 0 and step_limit >= 1")
    m = _resolve(machine, round_budget)
    if method is None:
        method = "explore" if isinstance(m, TreeMachine) else "brute"
    if method == "explore" and not isinstance(m, TreeMachine):
        raise ValueError("the explore method needs a tree machine")
    if method not in ("explore", "brute"):
        raise ValueError(f"unknown method {method!r}")
    name = machine if isinstance(machine, str) else getattr(m, "name", repr(m))
    if workers > 1 and not isinstance(machine, str):
        raise ValueError("parallel enumeration needs the machine by name")

    units = _units(m, max_len, method)
    done: dict[str, None] = {}
    records: list[HaltingRecord] = []
    limited = 0
    out_fh = None
    if record_file is not None:
        header = _header(name, max_len, step_limit, method)
        if resume and os.path.exists(record_file):
            old_header, old_units, old_records, old_limited, committed = read_record_file(record_file)
            if old_header != header:
                raise RecordFileError(f"record file is for {old_header[2:]!r}, not {header[2:]!r}")
            done = dict.fromkeys(old_units)
            records.extend(old_records)
            limited += old_limited
            with open(record_file, "r+b") as fh:
                fh.truncate(committed)
            out_fh = open(record_file, "a", encoding="utf-8")
        else:
            out_fh = open(record_file, "w", encoding="utf-8")
            out_fh.write(RECORD_MAGIC + "\n" + header + "\n")
            out_fh.write("# codeword\tsteps\toutput_bits\toutput_term\n")
            out_fh.flush()

    todo = [u for u in units if u not in done]
    jobs = [(machine if workers > 1 else m, u, max_len, step_limit, method, round_budget)
            for u in todo]
    try:
        if workers > 1 and jobs:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results: Iterator = pool.map(_run_unit_star, jobs, chunksize=max(1, len(jobs) // (8 * workers)))
                limited += _collect(todo, results, records, out_fh)
        else:
            limited += _collect(todo, map(_run_unit_star, jobs), records, out_fh)
    finally:
        if out_fh is not None:
            out_fh.close()
    records.sort(key=lambda r: _order(r.codeword))
    return HaltingRecords(records, limited)


def _collect(todo, results, records, out_fh) -> int:
    # results arrive in unit order whatever the worker count
    total = 0
    for unit, (recs, limited) in zip(todo, results):
        records.extend(recs)
        total += limited
        if out_fh is not None:
            for r in recs:
                out_fh.write(r.to_line() + "\n")
            out_fh.write(f"# done {unit} limited={limited}\n")
            out_fh.flush()
    return total


# ---------------------------------------------------------------------------
# Halting probability


@dataclass(frozen=True)
class OmegaBound:
    """``numerator / 2**precision``, a lower bound on the halting probability."""

    numerator: int
    precision: int
    max_len: int
    step_limit: int
    records: tuple[HaltingRecord, ...] = field(default=(), compare=False, repr=False)
    step_limited: int = field(default=0, compare=False)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.precision)

    def binary_expansion(self, digits: int | None = None) -> str:
        digits = self.precision if digits is None else digits
        num = self.numerator
        # shift to the requested number of binary digits (truncating)
        if digits >= self.precision:
            num <<= digits - self.precision
        else:
            num >>= self.precision - digits
        whole, frac = divmod(num, 1 << digits)
        if digits == 0:
            return str(whole)
        return f"{whole}." + format(frac, f"0{digits}b")

    def report(self) -> str:
        return f"{self.numerator}/2^{self.precision} = {self.binary_expansion()}"


def omega_from_records(records: Iterable[HaltingRecord], max_len: int, step_limit: int,
                       step_limited: int = 0) -> OmegaBound:
    records = tuple(records)
    precision = max([max_len] + [len(r.codeword) for r in records])
    numerator = sum(1 << (precision - len(r.codeword)) for r in records)
    return OmegaBound(numerator, precision, max_len, step_limit, records, step_limited)


def omega_lower_bound(machine, max_len: int, step_limit: int, **options) -> OmegaBound:
    """Exact sum of ``2**-len(p)`` over the halting codewords found."""
    recs = enumerate_halting(machine, max_len, step_limit, **options)
    return omega_from_records(recs, max_len, step_limit, recs.step_limited)


# ---------------------------------------------------------------------------
# Program-size complexity


def _target_matcher(target):
    if isinstance(target, str) and set(target) <= {"0", "1"}:
        def match(r: HaltingRecord) -> bool:
            if r.output_bits != target:
                return False
            if target or r.is_raw:
                return True
            # an empty decoding is also what non-lists give; insist on nil
            try:
                return try_decode_bool_list(r.term()) == ""
            except CurriedSyntaxError:
                return False
        return match
    if isinstance(target, str):
        target = parse_curried(target)

    def match_term(r: HaltingRecord) -> bool:
        if r.is_raw:
            return False
        try:
            return combinator_eq(r.term(), target)
        except CurriedSyntaxError:
            return False
    return match_term


def complexity_upper_bound(machine, target, max_len: int, step_limit: int,
                           records: Iterable[HaltingRecord] | None = None, **options) -> int | None:
    """Length of the shortest halting codeword whose output is ``target``.

    ``target`` is a bit string (matched against the output read as a list of
    booleans), a term, or the text of a term (matched by comparing normal
    forms).  ``None`` when nothing up to ``max_len`` produces it.
    """
    if records is None:
        records = enumerate_halting(machine, max_len, step_limit, **options)
    match = _target_matcher(target)
    for r in sorted(records, key=lambda r: _order(r.codeword)):
        if len(r.codeword) <= max_len and match(r):
            return len(r.codeword)
    return None


# ---------------------------------------------------------------------------
# Counting and Kraft


def catalan(n: int) -> int:
    """``C(n)`` via ``C(k+1) = C(k) * 2(2k+1) / (k+2)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def count_trees(length: int, method: str = "search") -> int:
    """Number of strings of ``length`` bits that parse as exactly one tree.

    ``"strings"`` tests every string; ``"search"`` walks the same strings as a
    prefix tree and drops a prefix as soon as the parser has rejected it.
    """
    if length <= 0 or length % 2 == 0:
        return 0
    if method == "strings":
        return sum(tree_prefix_length(b) == length for b in all_bit_strings(length, length))
    if method != "search":
        raise ValueError(f"unknown method {method!r}")
    count = 0
    stack = [(0, 0)]  # (bits so far, open subtrees - 1)
    while stack:
        pos, c = stack.pop()
        if c < 0:
            count += pos == length
            continue
        if pos == length or c + 1 > length - pos:
            continue  # cannot close in the bits left
        stack.append((pos + 1, c + 1))
        stack.append((pos + 1, c - 1))
    return count


def catalan_asymptotic(n: int) -> float:
    return 4.0 ** n / math.sqrt(math.pi * n ** 3)


def kraft_prefix_check(records) -> bool:
    """No codeword is a proper prefix of another and ``Σ 2**-len <= 1``."""
    words = sorted({r.codeword if isinstance(r, HaltingRecord) else r for r in records})
    for a, b in zip(words, words[1:]):
        if b.startswith(a):
            return False
    return sum((Fraction(1, 1 << len(w)) for w in words), Fraction(0)) <= 1
