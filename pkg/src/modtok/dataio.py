"""Vocabularies and streaming CSV encode/decode.

Raw categorical values are bridged to the integer-id world by a Vocabulary:
the k-th distinct value seen is assigned id k, so a fixed input order always
produces the same mapping. There is deliberately no out-of-vocabulary bucket;
an OOV bucket would silently break reversibility, so unknown values are hard
errors instead.

File jobs stream row by row (memory stays at one row plus the vocabularies)
and write through a temporary file that is atomically renamed on success, so
a failed job never leaves partial output behind.

File formats
------------
Data files: comma-separated with a mandatory header row; fields containing
comma, quote, or newline are quoted with quotes doubled; rows end with a
single newline. Vocabulary files: one raw value per line, 0-based line number
equals id, every line newline-terminated; values containing newlines are
rejected when the vocabulary is built.
"""

from __future__ import annotations

import csv
import os
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    CapacityError,
    DigitOutOfRange,
    FormatError,
    IdAboveVocab,
    IntegrityError,
    MissingColumn,
    UnknownValue,
)
from .tokenizer import TokenizerConfig, load_config

# Ids are signed-64-bit safe everywhere; more distinct values than this is a
# data error, not a tokenization problem.
MAX_VOCAB = 2**63


class Vocabulary:
    """Bidirectional map between raw values and contiguous ids [0, V)."""

    __slots__ = ("_forward", "_reverse")

    def __init__(self):
        self._forward: dict[str, int] = {}
        self._reverse: list[str] = []

    @classmethod
    def build(cls, values: Iterable[str]) -> "Vocabulary":
        """Assign ids by first occurrence; duplicates are ignored."""
        vocab = cls()
        add = vocab._add
        for value in values:
            add(value, allow_duplicates=True)
        return vocab

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "Vocabulary":
        """Rebuild from persisted lines; duplicates are corruption here."""
        vocab = cls()
        for value in lines:
            vocab._add(value, allow_duplicates=False)
        return vocab

    def _add(self, value: str, allow_duplicates: bool) -> None:
        if not isinstance(value, str):
            raise FormatError(f"vocabulary values must be strings, got {value!r}")
        if "\n" in value or "\r" in value:
            raise FormatError(f"vocabulary value {value!r} contains a newline")
        if value in self._forward:
            if allow_duplicates:
                return
            raise FormatError(f"duplicate vocabulary value {value!r}")
        if len(self._reverse) >= MAX_VOCAB:
            raise CapacityError(f"vocabulary exceeds {MAX_VOCAB} distinct values")
        self._forward[value] = len(self._reverse)
        self._reverse.append(value)

    def id_of(self, value: str) -> int | None:
        return self._forward.get(value)

    def value_of(self, id_: int) -> str:
        return self._reverse[id_]

    def __len__(self) -> int:
        return len(self._reverse)

    def __contains__(self, value: str) -> bool:
        return value in self._forward

    def __iter__(self) -> Iterator[str]:
        return iter(self._reverse)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return self._reverse == other._reverse

    def __repr__(self) -> str:
        return f"Vocabulary({len(self._reverse)} values)"


def build_vocab(rows: Iterable[str]) -> Vocabulary:
    """Vocabulary from a stream of raw values, first occurrence wins."""
    return Vocabulary.build(rows)


def save_vocab(vocab: Vocabulary, destination: str | os.PathLike) -> None:
    """One value per line in id order; empty vocabulary writes an empty file."""
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        for value in vocab:
            fh.write(value)
            fh.write("\n")


def load_vocab(source: str | os.PathLike) -> Vocabulary:
    with open(source, "r", encoding="utf-8", newline="") as fh:
        text = fh.read()
    if text == "":
        return Vocabulary()
    if not text.endswith("\n"):
        raise FormatError(f"vocabulary file {source} does not end with a newline")
    return Vocabulary.from_lines(text[:-1].split("\n"))


@dataclass(frozen=True)
class ColumnSpec:
    """One categorical column plus the files that govern its transform."""

    column: str
    config_path: str | os.PathLike
    vocab_path: str | os.PathLike


@dataclass
class FileSummary:
    """What a file job did: row count and per-column config identities."""

    rows: int
    columns: list[str]
    configs: list[str]

    def __str__(self) -> str:
        parts = [f"rows={self.rows}"]
        parts += [f"{col}={desc}" for col, desc in zip(self.columns, self.configs)]
        return " ".join(parts)


@contextmanager
def _atomic_output(path: str | os.PathLike):
    """Yield a text handle to a temp file; rename over path only on success."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(prefix=".modtok-tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            yield fh
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    else:
        os.replace(tmp, path)


def _load_specs(specs: Iterable[ColumnSpec]) -> list[tuple[str, TokenizerConfig, Vocabulary]]:
    """Resolve and validate every referenced file before touching any data."""
    loaded = []
    seen = set()
    for spec in specs:
        if spec.column in seen:
            raise FormatError(f"column {spec.column!r} specified twice")
        seen.add(spec.column)
        cfg = load_config(spec.config_path)
        vocab = load_vocab(spec.vocab_path)
        if len(vocab) > cfg.capacity:
            raise IntegrityError(
                f"vocabulary for column {spec.column!r} has {len(vocab)} values but "
                f"the config capacity is only {cfg.capacity}"
            )
        loaded.append((spec.column, cfg, vocab))
    return loaded


def _column_position(header: list[str], name: str) -> int:
    hits = [i for i, h in enumerate(header) if h == name]
    if not hits:
        raise MissingColumn(name)
    if len(hits) > 1:
        raise FormatError(f"column {name!r} appears {len(hits)} times in the header")
    return hits[0]


def _digit_names(column: str, n: int) -> list[str]:
    return [f"{column}_t{k}" for k in range(n)]


def encode_file(
    input_path: str | os.PathLike,
    specs: Iterable[ColumnSpec],
    output_path: str | os.PathLike,
) -> FileSummary:
    """Replace each specified column with its n token-digit columns.

    Column <col> becomes <col>_t0 ... <col>_t{n-1}; all other columns pass
    through untouched. Any unknown value, missing column, or malformed row
    aborts the job and removes the partial output.
    """
    loaded = _load_specs(specs)
    with open(input_path, "r", encoding="utf-8", newline="") as fin:
        reader = csv.reader(fin)
        header = next(reader, None)
        if header is None:
            raise FormatError(f"input file {input_path} has no header row")

        plan: dict[int, tuple[str, TokenizerConfig, Vocabulary]] = {}
        for column, cfg, vocab in loaded:
            plan[_column_position(header, column)] = (column, cfg, vocab)

        out_header: list[str] = []
        for i, name in enumerate(header):
            if i in plan:
                column, cfg, _ = plan[i]
                out_header.extend(_digit_names(column, cfg.n))
            else:
                out_header.append(name)
        if len(set(out_header)) != len(out_header):
            raise FormatError("token digit column names collide with existing columns")

        rows = 0
        with _atomic_output(output_path) as fout:
            writer = csv.writer(fout, lineterminator="\n")
            writer.writerow(out_header)
            width = len(header)
            for row_number, row in enumerate(reader, start=1):
                if len(row) != width:
                    raise FormatError(
                        f"row {row_number} has {len(row)} fields, expected {width}"
                    )
                out_row: list[str] = []
                for i, cell in enumerate(row):
                    if i in plan:
                        column, cfg, vocab = plan[i]
                        id_ = vocab.id_of(cell)
                        if id_ is None:
                            raise UnknownValue(column, row_number, cell)
                        out_row.extend(str(d) for d in cfg.encode(id_))
                    else:
                        out_row.append(cell)
                writer.writerow(out_row)
                rows += 1

    return FileSummary(
        rows=rows,
        columns=[column for column, _, _ in loaded],
        configs=[cfg.describe() for _, cfg, _ in loaded],
    )


def decode_file(
    input_path: str | os.PathLike,
    specs: Iterable[ColumnSpec],
    output_path: str | os.PathLike,
) -> FileSummary:
    """Restore raw values from token-digit columns; inverse of encode_file."""
    loaded = _load_specs(specs)
    with open(input_path, "r", encoding="utf-8", newline="") as fin:
        reader = csv.reader(fin)
        header = next(reader, None)
        if header is None:
            raise FormatError(f"input file {input_path} has no header row")

        # For each column: the positions of its n digit columns, in digit order.
        plans: list[tuple[str, TokenizerConfig, Vocabulary, list[int]]] = []
        drop: set[int] = set()
        for column, cfg, vocab in loaded:
            positions = [_column_position(header, name) for name in _digit_names(column, cfg.n)]
            plans.append((column, cfg, vocab, positions))
            drop.update(positions)

        out_header: list[str] = []
        insert_at = {positions[0]: column for column, _, _, positions in plans}
        for i, name in enumerate(header):
            if i in insert_at:
                out_header.append(insert_at[i])
            elif i not in drop:
                out_header.append(name)
        if len(set(out_header)) != len(out_header):
            raise FormatError("decoded column names collide with existing columns")

        rows = 0
        with _atomic_output(output_path) as fout:
            writer = csv.writer(fout, lineterminator="\n")
            writer.writerow(out_header)
            width = len(header)
            for row_number, row in enumerate(reader, start=1):
                if len(row) != width:
                    raise FormatError(
                        f"row {row_number} has {len(row)} fields, expected {width}"
                    )
                decoded: dict[int, str] = {}
                for column, cfg, vocab, positions in plans:
                    digits = []
                    for pos in positions:
                        cell = row[pos]
                        if not (cell.isascii() and cell.isdigit()):
                            raise FormatError(
                                f"column {column!r}, row {row_number}: "
                                f"token digit {cell!r} is not an unsigned integer"
                            )
                        d = int(cell, 10)
                        if not 0 <= d < cfg.prime.value:
                            raise DigitOutOfRange(
                                d, cfg.prime.value, column=column, row=row_number
                            )
                        digits.append(d)
                    id_ = cfg.decode(digits)
                    if id_ >= len(vocab):
                        raise IdAboveVocab(column, row_number, id_, len(vocab))
                    decoded[positions[0]] = vocab.value_of(id_)
                out_row: list[str] = []
                for i, cell in enumerate(row):
                    if i in decoded:
                        out_row.append(decoded[i])
                    elif i not in drop:
                        out_row.append(cell)
                writer.writerow(out_row)
                rows += 1

    return FileSummary(
        rows=rows,
        columns=[column for column, _, _ in loaded],
        configs=[cfg.describe() for _, cfg, _ in loaded],
    )
