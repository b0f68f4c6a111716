"""Simulating the three classical-leaning extensions inside the base logic.

Each mode names a closed value set: lp keeps {t,f,b}, k3 keeps {t,f,n},
cl keeps {t,f}.  Restricted consequence over such a set coincides with
base consequence after adding guard premises over the atomic
subformulas: the lp guard forces an atom's excluded middle to be truly
designated, the k3 guard forces its contradiction to fail, and cl adds
both.
"""

from __future__ import annotations

from dataclasses import dataclass

from .semantics import consequence_prop
from .syntax import And, Falsity, Imp, Not, Or, atomic_subformulas
from .values import ALL_VALUES, CL_VALUES, K3_VALUES, LP_VALUES

EXTENSION_MODES = ("lp", "k3", "cl")

MODE_VALUES = {"lp": LP_VALUES, "k3": K3_VALUES, "cl": CL_VALUES}


def _lp_guard(a):
    return Not(Imp(Or(a, Not(a)), Falsity()))


def _k3_guard(a):
    return Imp(And(a, Not(a)), Falsity())


def translation_sets(gamma, delta, mode: str) -> frozenset:
    """Guard premises over every atomic subformula of the problem."""
    if mode not in EXTENSION_MODES:
        raise ValueError("unknown extension mode %r" % (mode,))
    atoms = atomic_subformulas(tuple(gamma) + tuple(delta))
    out = set()
    for a in sorted(atoms, key=str):
        if mode in ("lp", "cl"):
            out.add(_lp_guard(a))
        if mode in ("k3", "cl"):
            out.add(_k3_guard(a))
    return frozenset(out)


@dataclass(frozen=True)
class SimulationCheck:
    mode: str
    restricted: bool
    translated: bool
    witness: dict | None

    @property
    def ok(self) -> bool:
        return self.restricted == self.translated


def verify_simulation(gamma, delta, mode: str) -> SimulationCheck:
    """Compare restricted consequence against the translated base problem.

    The two verdicts must agree; when they do not, the witness refutes
    whichever side claimed consequence.
    """
    gamma = frozenset(gamma)
    delta = frozenset(delta)
    restricted, rwit = consequence_prop(gamma, delta, MODE_VALUES[mode])
    guards = translation_sets(gamma, delta, mode)
    translated, twit = consequence_prop(guards | gamma, delta, ALL_VALUES)
    witness = None
    if restricted != translated:
        witness = twit if restricted else rwit
    return SimulationCheck(mode, restricted, translated, witness)
