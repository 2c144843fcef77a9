"""Disk cache of lower Bruhat intervals, keyed by datum, facet and class.

The cache is transparent: results never depend on whether it is used.  Each
entry is a JSON list of canonical representative strings; filenames are
content hashes of the key.
"""

from __future__ import annotations

import hashlib
import json
import os

from . import affine_weyl as aw
from .affine_weyl import element_to_string
from .root_datum import RootDatum


class IntervalCache:
    def __init__(self, directory: str):
        self.directory = directory
        self.hits = 0
        self.misses = 0

    def _path(self, facet, rep_element) -> str:
        key = "|".join([facet.datum.spec_string,
                        ",".join(map(str, facet.indices)),
                        element_to_string(rep_element)])
        digest = hashlib.sha256(key.encode()).hexdigest()[:24]
        return os.path.join(self.directory, f"interval-{digest}.json")

    def get(self, facet, rep_element):
        path = self._path(facet, rep_element)
        try:
            with open(path) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            self.misses += 1
            return None
        except OSError as exc:
            raise CacheIOError(str(exc)) from exc
        self.hits += 1
        return data["interval"]

    def put(self, facet, rep_element, interval_strings):
        path = self._path(facet, rep_element)
        try:
            os.makedirs(self.directory, exist_ok=True)
            with open(path, "w") as fh:
                json.dump({"datum": facet.datum.spec_string,
                           "facet": list(facet.indices),
                           "rep": element_to_string(rep_element),
                           "interval": list(interval_strings)}, fh)
        except OSError as exc:
            raise CacheIOError(str(exc)) from exc

    def entry_count(self) -> int:
        if not os.path.isdir(self.directory):
            return 0
        return sum(1 for name in os.listdir(self.directory)
                   if name.startswith("interval-") and name.endswith(".json"))

    def clear(self) -> int:
        removed = 0
        if os.path.isdir(self.directory):
            for name in os.listdir(self.directory):
                if name.startswith("interval-") and name.endswith(".json"):
                    os.remove(os.path.join(self.directory, name))
                    removed += 1
        return removed

    def stats(self) -> dict:
        return {"directory": self.directory, "entries": self.entry_count(),
                "hits": self.hits, "misses": self.misses}


class CacheIOError(OSError):
    pass


def warm(cache: IntervalCache, datum: RootDatum, facet, length_cap: int) -> int:
    """Precompute and store the lower interval of every double-coset class of
    length <= length_cap (torsion Omega fibers included).  Returns the number
    of distinct classes; repeated warming adds no new entries."""
    sys = aw.simple_system(datum)
    taus = [aw.omega_element(datum, rep)
            for rep in datum.fundamental_group_torsion_reps()]
    seen = set(taus)
    frontier = list(taus)
    while frontier:
        nxt = []
        for w in frontier:
            for i in sys.indices:
                p = w * sys.elements[i]
                if aw.length(p) <= length_cap and p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    classes = {aw.double_coset_rep(w, facet) for w in seen}
    classes = {c for c in classes if c.length <= length_cap}
    for c in sorted(classes, key=lambda c: aw.element_sort_key(c.rep)):
        aw.enumerate_lower_interval(c, cache=cache)
    return len(classes)
