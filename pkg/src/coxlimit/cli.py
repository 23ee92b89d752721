"""The ``cox`` command line tool.

Exit status: 0 on success, 1 on a domain or input error, 2 when a verdict
is unknown within the given bounds.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from concurrent.futures import ThreadPoolExecutor

from .affine import affine_block_census, affine_data
from .automaton import normal_form, reduced_word_dfa, small_roots
from .core import (CoxeterError, format_word, inversion_roots, is_reduced,
                   load_coxeter_matrix, parse_word, positive_roots,
                   subgroup_classify)
from .epwords import EPWord, boundary_reflections, ep_is_reduced, root_membership
from .order import (block_fiber_poset, braid_limit_leq, coxeter_type_name,
                    ends_count, moussong_hyperbolic, same_block, wxi_group)

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _pmap(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _ep(args, mat, side: str = "") -> EPWord:
    pre = getattr(args, f"{side}prefix")
    per = getattr(args, f"{side}period")
    if per is None:
        flag = f"--{side.replace('_', '-')}period"
        raise CoxeterError(f"{flag} is required")
    return EPWord.parse(pre or "", per, mat.rank)


def _emit_dot(path, text, out):
    if path == "-":
        out.extend(text.splitlines())
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_classify(args, mat, out):
    subset = parse_word(args.subset, mat.rank) if args.subset else range(1, mat.rank + 1)
    st = subgroup_classify(mat, subset)
    out.append(f"rank: {mat.rank}")
    out.append(f"class: {st.tag}")
    for comp, tag in st.components:
        out.append(f"component {{{', '.join(map(str, comp))}}}: {tag}")
    return EXIT_OK


def cmd_hyperbolic(args, mat, out):
    ok, obs = moussong_hyperbolic(mat)
    out.append("hyperbolic: yes" if ok else f"hyperbolic: no (witness T = {obs})")
    return EXIT_OK


def cmd_ends(args, mat, out):
    e = ends_count(mat)
    if e.witness is not None:
        out.append(f"ends: infinity ({e.evidence})")
    else:
        out.append(f"ends: {e.count} ({e.evidence})")
    return EXIT_OK


def cmd_reduced(args, mat, out):
    if args.word is not None:
        w = parse_word(args.word, mat.rank)
        ok = is_reduced(mat, w)
        out.append(f"reduced: {'yes' if ok else 'no'}")
        out.append(f"normal form: {format_word(normal_form(reduced_word_dfa(mat), w)) or 'e'}")
        return EXIT_OK
    w = _ep(args, mat)
    out.append(f"word: {w}")
    out.append(f"reduced: {'yes' if ep_is_reduced(mat, w) else 'no'}")
    return EXIT_OK


def cmd_inv(args, mat, out):
    if args.word is not None:
        w = parse_word(args.word, mat.rank)
        for k, r in enumerate(inversion_roots(mat, w), 1):
            out.append(f"{k}: {r}")
        return EXIT_OK
    w = _ep(args, mat)
    if not ep_is_reduced(mat, w):
        raise CoxeterError(f"{w} is not an infinite reduced word")
    roots = positive_roots(mat, args.depth)
    verdicts = _pmap(lambda r: root_membership(mat, w, r, args.steps), roots, args.threads)
    code = EXIT_OK
    for r, v in zip(roots, verdicts):
        out.append(f"{r}: {v}")
        if v.kind == "unknown":
            code = EXIT_UNKNOWN
    return code


def cmd_compare(args, mat, out):
    left, right = _ep(args, mat, "left_"), _ep(args, mat, "right_")
    jobs = [(braid_limit_leq, left, right), (braid_limit_leq, right, left), (same_block, left, right)]
    res = _pmap(lambda j: j[0](mat, j[1], j[2], args.depth), jobs, args.threads)
    out.append(f"left ≤ right: {res[0]}")
    out.append(f"right ≤ left: {res[1]}")
    out.append(f"same block: {res[2]}")
    return EXIT_UNKNOWN if any(v.value == "unknown" for v in res) else EXIT_OK


def cmd_walls(args, mat, out):
    w = _ep(args, mat)
    b = boundary_reflections(mat, w, args.depth)
    out.append(f"word: {w}")
    out.append(f"walls through the limit point (depth <= {args.depth}): {len(b.roots)}")
    for r in b.roots:
        out.append(f"  {r}")
    out.append(f"flag: {b.flag}")
    return EXIT_UNKNOWN if b.incomplete else EXIT_OK


def cmd_block(args, mat, out):
    w = _ep(args, mat)
    sub = wxi_group(mat, w, args.depth)
    out.append(f"word: {w}")
    out.append(f"W(xi): {sub.type_name}")
    for r in sub.canonical:
        out.append(f"  generator {r}")
    if "infinite" in sub.flags:
        out.append("W(xi) is infinite")
    else:
        out.append(f"|W(xi)|: {len(block_fiber_poset(mat, w, args.depth).nodes)}")
    return EXIT_UNKNOWN if "incomplete" in sub.flags else EXIT_OK


def cmd_fiber_poset(args, mat, out):
    w = _ep(args, mat)
    poset = block_fiber_poset(mat, w, args.depth)
    out.append(f"word: {w}")
    out.append(f"W(xi): {poset.subgroup.type_name}")
    out.append(f"classes: {len(poset)}")
    out.extend(poset.cover_list().splitlines())
    if args.dot:
        _emit_dot(args.dot, poset.to_dot(), out)
    return EXIT_OK


def cmd_affine_census(args, mat, out):
    data = affine_data(mat)
    words = set()
    letters = range(1, mat.rank + 1)
    for lu in range(args.max_prefix + 1):
        for u in itertools.product(letters, repeat=lu):
            for lv in range(1, args.max_period + 1):
                for v in itertools.product(letters, repeat=lv):
                    words.add(EPWord(u, v).canonical())
    words = sorted(words, key=lambda w: (len(w.prefix) + len(w.period), w.prefix, w.period))
    flags = _pmap(lambda w: ep_is_reduced(mat, w), words, args.threads)
    words = [w for w, ok in zip(words, flags) if ok]
    census = affine_block_census(mat, words, args.depth)
    out.append(f"finite part: {coxeter_type_name(data.finite_mat)} (node {data.node + 1} removed)")
    out.append(f"faces: {len(census.faces)}")
    out.append(f"words: {len(words)}")
    out.extend(census.report().splitlines())
    return EXIT_OK


def cmd_automaton_dump(args, mat, out):
    srs = small_roots(mat)
    dfa = reduced_word_dfa(mat)
    out.append(f"small roots: {len(srs)}")
    for k, r in enumerate(srs.root_objects(), 1):
        out.append(f"  {k}: {r}")
    out.append(f"states: {len(dfa.states)}")
    if args.dot:
        _emit_dot(args.dot, dfa.to_dot(), out)
    return EXIT_OK


COMMANDS = {
    "classify": (cmd_classify, "classify the Coxeter group or a special subgroup"),
    "hyperbolic": (cmd_hyperbolic, "Moussong's hyperbolicity test"),
    "ends": (cmd_ends, "number of ends"),
    "reduced": (cmd_reduced, "test a finite or eventually periodic word"),
    "inv": (cmd_inv, "inversion roots, or wall classes along an infinite word"),
    "compare": (cmd_compare, "limit weak order and block comparison of two words"),
    "block": (cmd_block, "W(xi) and the size of the block fiber"),
    "fiber-poset": (cmd_fiber_poset, "the block fiber as a poset"),
    "walls": (cmd_walls, "walls through the limit point of a word"),
    "affine-census": (cmd_affine_census, "assign a sweep of words to arrangement faces"),
    "automaton-dump": (cmd_automaton_dump, "small roots and the reduced-word automaton"),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cox", description="Coxeter groups, infinite reduced words and their limits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("-f", "--file", required=True, help="Coxeter matrix file")
        sp.add_argument("--depth", type=int, default=6, help="root depth bound (default 6)")
        sp.add_argument("--steps", type=int, default=None, help="step cap for wall tracking")
        sp.add_argument("--threads", type=int, default=1, help="worker threads")
        sp.add_argument("--dot", help="write DOT output to this path ('-' for stdout)")
        sp.add_argument("--word")
        sp.add_argument("--prefix")
        sp.add_argument("--period")
        sp.add_argument("--subset")
        for side in ("left", "right"):
            sp.add_argument(f"--{side}-prefix")
            sp.add_argument(f"--{side}-period")
        sp.add_argument("--max-prefix", type=int, default=2)
        sp.add_argument("--max-period", type=int, default=4)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"cox: error: {exc}", file=stderr)
        return EXIT_ERROR
    out: list = []
    try:
        mat = load_coxeter_matrix(args.file)
        code = COMMANDS[args.command][0](args, mat, out)
    except OSError as exc:
        print(f"cox: error: {exc.strerror}: {exc.filename}", file=stderr)
        return EXIT_ERROR
    except CoxeterError as exc:
        for line in out:
            print(line, file=stdout)
        print(f"cox: error: {exc}", file=stderr)
        return EXIT_ERROR
    for line in out:
        print(line, file=stdout)
    return code


def main() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(run())
