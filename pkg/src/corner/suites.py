"""The metatheory suites behind ``corner verify``.

Every suite takes ``(sig, seed, count)`` and returns a Report whose case
seeds are ``seed .. seed + count - 1``, so a failing case can be replayed
alone.
"""

from __future__ import annotations

import itertools
import random

from .calculus import Let, alpha_eq, check_term, free_vars, size, term_nodes, vsub
from .cornering import check_functor
from .errors import CornerError, Unsatisfiable
from .generator import OPEN, GenConfig, gen_term, gen_value, universal_signature
from .report import Report
from .rewrite import (
    PAIR_CLASSES,
    TermContext,
    active_steps,
    apply,
    convertible,
    is_active,
    normal_form,
    normalize,
    plug,
    redexes,
)
from .vdc import check_vdc_laws


def _run(report, law, seed, check):
    try:
        ok = check()
        report.add(law, seed, ok)
    except Unsatisfiable as exc:
        report.skip(law, seed, exc)
    except CornerError as exc:
        report.error(law, seed, exc)


def check_size(sig=None, seed=0, count=200) -> Report:
    """Each rewrite step shrinks size; a trace has at most size(t) - 2 steps; vsub keeps size."""
    sig = sig or universal_signature()
    report = Report("size")
    for s in range(seed, seed + count):
        t = None

        def steps():
            nonlocal t
            t = gen_term(sig, cfg=GenConfig(s))
            trace = normalize(t)
            sizes = [size(u) for u in trace.terms()]
            return all(a > b for a, b in zip(sizes, sizes[1:])) and len(trace.steps) <= size(t) - 2

        def substitution():
            fv = free_vars(t)
            rng = random.Random(f"{s}/vsub")
            chosen = [x for x in fv if rng.random() < 0.5] or fv[:1]
            if not chosen:
                return True
            env = dict(check_term(t, sig).ctx)
            names = (f"w{k}" for k in itertools.count())
            binds = [(x, gen_value(sig, env[x], OPEN, rng, lambda: next(names))) for x in chosen]
            return size(vsub(t, binds)) == size(t)

        _run(report, "decrease", s, steps)
        if t is not None:
            _run(report, "vsub", s, substitution)
    return report


def check_confluence(sig=None, seed=0, count=200) -> Report:
    """Every one-step reduct of a term has the same normal form."""
    sig = sig or universal_signature()
    report = Report("confluence")
    for s in range(seed, seed + count):
        def check():
            t = gen_term(sig, cfg=GenConfig(s, max_term_size=6))
            nf = normal_form(t)
            return all(alpha_eq(normal_form(apply(t, r)), nf) for r in redexes(t))

        _run(report, "one-step-reducts", s, check)
    return report


def check_cutfree(sig=None, seed=0, count=200) -> Report:
    """Normal forms contain no let-binding."""
    sig = sig or universal_signature()
    report = Report("cutfree")
    for s in range(seed, seed + count):
        def check():
            nf = normal_form(gen_term(sig, cfg=GenConfig(s)))
            return not any(isinstance(u, Let) for u in term_nodes(nf))

        _run(report, "no-let", s, check)
    return report


def _prefix_len(cls, i):
    # the classes whose overlap sits inside a longer chain get both variants
    if cls in ("1-7", "5-7"):
        return 0 if i % 2 == 0 else 1 + (i // 2) % 2
    return None


def check_active_chain(apex, sig, start: int) -> bool:
    """The inputs before ``start`` form an effectful context; walking it to an
    active one must take single rewrites of the plugged term."""
    L = TermContext((), apex.binders, apex.inputs[:start], apex.body)
    fill = apex.inputs[start:]
    avoid = {x for a in fill for x in free_vars(a)}
    chain = active_steps(L, sig, avoid=avoid)
    for a, b in zip(chain, chain[1:]):
        ta, tb = plug(a, fill), plug(b, fill)
        if not any(alpha_eq(apply(ta, r), tb) for r in redexes(ta)):
            return False
    return is_active(chain[-1], sig)


def check_critical_pairs(sig=None, seed=0, count=200) -> Report:
    """Both reducts of every overlap are joinable."""
    from .generator import gen_critical_pair

    sig = sig or universal_signature()
    report = Report("critical-pairs")
    for cls in PAIR_CLASSES:
        for i, s in enumerate(range(seed, seed + count)):
            def check():
                k = _prefix_len(cls, i)
                apex, left, right = gen_critical_pair(cls, s, sig, k)
                ok = convertible(left, right, sig)
                if k:
                    # the overlapping pair sits after a nonempty prefix
                    ok = ok and check_active_chain(apex, sig, k)
                return ok

            _run(report, cls, s, check)
    return report


SUITES = {
    "size": check_size,
    "confluence": check_confluence,
    "cutfree": check_cutfree,
    "critical-pairs": check_critical_pairs,
    "vdc": check_vdc_laws,
    "functor": check_functor,
}


def run_suite(name, sig=None, seed=0, count=200) -> Report:
    return SUITES[name](sig, seed, count)
