"""Command-line surface for single-word queries and corpus enumeration.

Commands: classify | normalize | invariants | certify | enumerate |
selftest.  Single-word commands emit one report; enumerate streams one
row per freely-cyclically-reduced band word up to --max-len in
deterministic (length, lexicographic) order with a verdict summary
footer.  Output formats: text (default), json, csv.  Exit codes:
0 success, 2 usage/parse errors, 3 internal-consistency failures.
BRAID3_STEP_BUDGET overrides the rewriting guard of the normal-form
engine.

JSON rows carry exactly the keys word, xu_form {k, N, P}, xu_length,
components, chi, iota, genus, verdict, mirrored, witness, hfk_top,
alexander, monic, certificate; inapplicable values are null.  For a
NearlyFibred word the certificate field documents the fibredness of the
witness.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterable, Iterator, TextIO

from .alexander import (NormalizationError, alexander_poly, monicity_report,
                        render_alexander)
from .classify import (FIBRED, NEARLY_FIBRED, TRIVIAL_LINK3,
                       CertificateError, ContractViolation, FiberCertificate,
                       classify, invariants, verify_certificate)
from .normal import (InternalCheckError, StepBudgetExceeded, XuForm,
                     xu_form, xu_length)
from .words import Word, WordError, format_word, parse_word

MAX_LEN_SAFETY = 10

CSV_COLUMNS = ("word", "length", "xu", "xu_length", "components", "chi",
               "iota", "genus", "verdict", "mirrored", "witness", "hfk_top",
               "alexander", "monic")

_LETTER_ORDER = (1, 2, 3, -1, -2, -3)


@dataclass
class RunConfig:
    command: str
    word: str | None = None
    max_len: int | None = None
    output: str = "text"
    out_path: str | None = None
    dedup: bool = False
    parallel: int = 0


def render_xu(x: XuForm) -> str:
    """Compact token text of a form: d is the dual Garside element."""
    parts: list[str] = []
    if x.k > 0:
        parts.append(f"d^{x.k}")
    if x.N:
        parts.append(format_word(x.N))
    if x.P:
        parts.append(format_word(x.P))
    if x.k < 0:
        parts.append(f"d^{x.k}")
    return " ".join(parts) if parts else "e"


def _cert_json(cert: FiberCertificate | None):
    if cert is None:
        return None
    return {
        "start": format_word(cert.start),
        "moves": [[m.tag, m.pos] for m in cert.moves],
        "base_case": cert.base_case,
    }


def query_row(w: Word) -> dict:
    """The full report object for one word (the JSON row schema)."""
    x = xu_form(w)
    inv = invariants(w)
    lc = classify(w)
    poly = alexander_poly(w)
    mon = monicity_report(poly)
    cert = lc.certificate
    if lc.verdict == NEARLY_FIBRED:
        cert = classify(lc.witness).certificate
    if cert is not None and not verify_certificate(cert, cert.start):
        raise InternalCheckError(
            f"certificate replay failed for {format_word(w)!r}")
    return {
        "word": format_word(w),
        "xu_form": {"k": x.k, "N": format_word(x.N), "P": format_word(x.P)},
        "xu_length": xu_length(x),
        "components": inv.components,
        "chi": inv.chi,
        "iota": inv.iota,
        "genus": inv.genus,
        "verdict": lc.verdict,
        "mirrored": lc.mirrored,
        "witness": format_word(lc.witness) if lc.witness else None,
        "hfk_top": inv.hfk_top,
        "alexander": render_alexander(poly),
        "monic": None if mon.kind == "zero" else mon.kind == "monic",
    "certificate": _cert_json(cert),
    }


def _csv_cell(row: dict, col: str) -> str:
    if col == "length":
        val = len(parse_word(row["word"]))
    elif col == "xu":
        x = row["xu_form"]
        val = render_xu(XuForm(x["k"], parse_word(x["N"]), parse_word(x["P"])))
    else:
        val = row[col]
    if val is None:
        return ""
    if isinstance(val, bool):
        return "true" if val else "false"
    return str(val)


def _csv_line(cells: Iterable[str]) -> str:
    out = []
    for c in cells:
        if any(ch in c for ch in ",\"\n"):
            c = '"' + c.replace('"', '""') + '"'
        out.append(c)
    return ",".join(out)


def _text_report(row: dict, command: str) -> str:
    x = row["xu_form"]
    lines = [
        f"word:       {row['word'] or '(empty)'}",
        f"xu form:    {render_xu(XuForm(x['k'], parse_word(x['N']), parse_word(x['P'])))}"
        f"   (k={x['k']}, length {row['xu_length']})",
        f"verdict:    {row['verdict']}"
        + (f" (mirrored: {str(row['mirrored']).lower()})"
           if row["mirrored"] is not None else ""),
    ]
    if row["witness"]:
        lines.append(f"witness:    {row['witness']}")
    lines += [
        f"components: {row['components']}   chi: {row['chi']}   "
        f"iota: {row['iota']}   genus: "
        + (str(row["genus"]) if row["genus"] is not None else "-"),
        f"hfk top:    {row['hfk_top']}",
        f"alexander:  {row['alexander']}   monic: "
        + ("-" if row["monic"] is None else str(row["monic"]).lower()),
    ]
    if command == "certify":
        cert = row["certificate"]
        if cert is None:
            lines.append("certificate: none (not fibred)")
        else:
            lines.append(f"certificate: start {cert['start'] or '(empty)'}")
            for tag, pos in cert["moves"]:
                lines.append(f"    {tag} @ {pos}")
            lines.append(f"    base case: {cert['base_case']}")
    return "\n".join(lines)


def reduced_words(max_len: int) -> Iterator[Word]:
    """Freely-cyclically-reduced band words in (length, lexicographic)
    order over the alphabet a1 < a2 < a3 < A1 < A2 < A3."""
    yield ()
    word: list[int] = []

    def rec(remaining: int) -> Iterator[Word]:
        if remaining == 0:
            if len(word) < 2 or word[0] != -word[-1]:
                yield tuple(word)
            return
        for x in _LETTER_ORDER:
            if word and x == -word[-1]:
                continue
            word.append(x)
            yield from rec(remaining - 1)
            word.pop()

    for length in range(1, max_len + 1):
        yield from rec(length)


def run_query(config: RunConfig, out: TextIO) -> int:
    w = parse_word(config.word or "")
    row = query_row(w)
    if config.output == "json":
        out.write(json.dumps(row) + "\n")
    elif config.output == "csv":
        out.write(_csv_line(CSV_COLUMNS) + "\n")
        out.write(_csv_line(_csv_cell(row, c) for c in CSV_COLUMNS) + "\n")
    else:
        out.write(_text_report(row, config.command) + "\n")
    return 0


def run_enumerate(config: RunConfig, out: TextIO) -> int:
    max_len = config.max_len
    if max_len is None or max_len < 0 or max_len > MAX_LEN_SAFETY:
        raise WordError(
            f"--max-len must be between 0 and {MAX_LEN_SAFETY}")
    words = reduced_words(max_len)
    if config.parallel and config.parallel > 1:
        pool = Pool(config.parallel)
        rows: Iterable[dict] = pool.imap(query_row, words, chunksize=256)
    else:
        pool = None
        rows = map(query_row, words)
    counts: dict[str, int] = {}
    seen: set[str] = set()
    total = 0
    if config.output == "csv":
        out.write(_csv_line(CSV_COLUMNS) + "\n")
    try:
        for row in rows:
            if config.dedup:
                key = _csv_cell(row, "xu")
                if key in seen:
                    continue
                seen.add(key)
            total += 1
            counts[row["verdict"]] = counts.get(row["verdict"], 0) + 1
            if config.output == "json":
                out.write(json.dumps(row) + "\n")
            elif config.output == "csv":
                out.write(_csv_line(_csv_cell(row, c)
                                    for c in CSV_COLUMNS) + "\n")
            else:
                out.write(f"{row['word'] or '(empty)':24s} "
                          f"{row['verdict']:13s} {row['hfk_top']}\n")
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()
    summary = {"rows": total,
               "verdicts": {k: counts[k] for k in sorted(counts)}}
    if config.output == "json":
        out.write(json.dumps({"summary": summary}) + "\n")
    elif config.output == "csv":
        out.write(f"# rows: {total}\n")
        for k in sorted(counts):
            out.write(f"# verdict {k}: {counts[k]}\n")
    else:
        out.write(f"rows: {total}  " + "  ".join(
            f"{k}: {counts[k]}" for k in sorted(counts)) + "\n")
    return 0


def run_selftest(out: TextIO) -> int:
    import itertools

    from .classify import MONIC, hfk_top_rank
    from .oracle import equal_in_group, fingerprint

    failures = 0

    def check(name: str, fn) -> None:
        nonlocal failures
        try:
            fn()
            out.write(f"PASS {name}\n")
        except Exception as exc:  # noqa: BLE001 - report and count
            failures += 1
            out.write(f"FAIL {name}: {exc}\n")

    def presentation():
        assert fingerprint((2, 1)) == fingerprint((3, 2)) == fingerprint((1, 3))
        assert equal_in_group((1, -2), (-2, 3))
        for i, lo in ((1, 3), (2, 1), (3, 2)):
            assert equal_in_group((2, 1, i), (lo, 2, 1)), "migration direction"

    def anchors():
        unknot = invariants(parse_word("A2 a1"))
        assert (unknot.components, unknot.chi, unknot.iota) == (1, 1, 0)
        assert render_alexander(alexander_poly(parse_word("A2 a1"))) == "1"
        tref = invariants(parse_word("a2 a1 a2 a1"))
        assert (tref.genus, tref.chi) == (1, -1)
        mon = monicity_report(alexander_poly(parse_word("a2 a1 a2 a1")))
        assert mon.kind == "monic" and mon.breadth == 2
        assert classify(()).verdict == TRIVIAL_LINK3

    def trichotomy():
        letters = (1, 2, 3, -1, -2, -3)
        for n in range(5):
            for w in itertools.product(letters, repeat=n):
                lc = classify(w)
                h = hfk_top_rank(w)
                if lc.verdict != TRIVIAL_LINK3:
                    assert (lc.verdict == FIBRED) == (h == MONIC), w
                if lc.certificate is not None:
                    assert verify_certificate(
                        lc.certificate, lc.certificate.start), w

    def alexander_checks():
        letters = (1, 2, 3, -1, -2, -3)
        for w in itertools.product(letters, repeat=4):
            p = alexander_poly(w)
            assert p.reverse() in (p, -p), w
            from .words import component_count
            if component_count(w) == 1:
                assert abs(p(1)) == 1, w
            else:
                assert p(1) == 0, w

    check("presentation relations and twist migration", presentation)
    check("anchors: unknot, trefoil, trivial link", anchors)
    check("trichotomy + corollary, words <= 4", trichotomy)
    check("alexander symmetry and evaluation, words = 4", alexander_checks)
    out.write("selftest: " + ("OK\n" if not failures else
                              f"{failures} failure(s)\n"))
    return 0 if not failures else 3


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="braid3",
        description="Closed 3-braids: shortest conjugacy forms, the "
                    "trivial/fibred/nearly-fibred trichotomy, topmost "
                    "knot Floer rank, and the Alexander oracle.")
    ap.add_argument("command", nargs="?",
                    choices=["classify", "normalize", "invariants",
                             "certify", "enumerate", "selftest"],
                    help="what to run")
    ap.add_argument("word_arg", nargs="?", metavar="WORD",
                    help="band/Artin word, e.g. 'a1 A2' or 's1^3'")
    ap.add_argument("-w", "--word", help="word (alternative to positional)")
    ap.add_argument("--max-len", type=int, default=None,
                    help="enumerate words up to this length "
                         f"(0..{MAX_LEN_SAFETY})")
    ap.add_argument("--output", choices=["json", "csv", "text"],
                    default="text")
    ap.add_argument("--out", dest="out_path", default=None,
                    help="write output to a file instead of stdout")
    ap.add_argument("--dedup", action="store_true",
                    help="one row per conjugacy class (canonical form)")
    ap.add_argument("--parallel", type=int, default=0, metavar="N",
                    help="fan enumeration out over N worker processes")
    ap.add_argument("--selftest", action="store_true",
                    help="run the built-in self test and exit")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    if ns.selftest:
        ns.command = "selftest"
    if ns.command is None:
        ap.print_usage(sys.stderr)
        return 2
    word = ns.word if ns.word is not None else ns.word_arg
    config = RunConfig(command=ns.command, word=word, max_len=ns.max_len,
                       output=ns.output, out_path=ns.out_path,
                       dedup=ns.dedup, parallel=ns.parallel)
    out: TextIO
    close = False
    if config.out_path:
        out = open(config.out_path, "w", encoding="utf-8")
        close = True
    else:
        out = sys.stdout
    try:
        if config.command == "selftest":
            return run_selftest(out)
        if config.command == "enumerate":
            return run_enumerate(config, out)
        if word is None:
            print("error: this command requires a word "
                  "(use -w or a positional argument)", file=sys.stderr)
            return 2
        return run_query(config, out)
    except WordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (StepBudgetExceeded, InternalCheckError, NormalizationError,
            CertificateError, ContractViolation) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
