"""Disk cache for Gram blocks.

Recomputing Gram matrices dominates every verification sweep, and blocks are
shared between sweeps (the same module shows up for independence, spanning,
and dimension checks).  A block is cached under a key that pins down
everything the entries depend on: structure-table hash, highest weight data,
central charge, grading, and the exact monomial list.  Entries are stored as
decimal strings (exact; also safe for arbitrarily large integers).

The cache directory comes from the AFFINE_BASIS_CACHE environment variable
or an explicit argument; with neither, caching is off and everything is
recomputed.
"""

from fractions import Fraction
import hashlib
import json
import os


def default_cache_dir():
    d = os.environ.get("AFFINE_BASIS_CACHE", "").strip()
    return d or None


def block_key(table_hash, lam, level, degree, weight, monos, flavor="gram"):
    payload = json.dumps(
        [
            flavor,
            table_hash,
            list(lam),
            level,
            degree,
            list(weight),
            [list(m) for m in monos],
        ],
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


class GramCache:
    def __init__(self, root):
        self.root = root
        self.hits = 0
        self.misses = 0
        if root:
            os.makedirs(root, exist_ok=True)

    def _path(self, key):
        return os.path.join(self.root, key + ".json")

    def get_json(self, key):
        if not self.root:
            return None
        path = self._path(key)
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            self.misses += 1
            return None
        self.hits += 1
        return data

    def put_json(self, key, data):
        if not self.root:
            return
        path = self._path(key)
        tmp = path + ".tmp.%d" % os.getpid()
        with open(tmp, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)

    def get(self, key):
        data = self.get_json(key)
        if data is None:
            return None
        return [[_parse(x) for x in row] for row in data["matrix"]]

    def put(self, key, matrix):
        self.put_json(key, {"matrix": [[str(x) for x in row] for row in matrix]})


def _parse(s):
    f = Fraction(s)
    return int(f) if f.denominator == 1 else f
