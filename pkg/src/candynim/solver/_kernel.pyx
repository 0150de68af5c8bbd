# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled value engine.

Same recursion and tie-break as candynim.solver._python, with positions
packed into 64-bit keys for the transposition table.  An engine instance
is built for a fixed slot count (the root's pile count): each slot gets
62 // slots bits, piles sit highest-first, unused slots pad with zeros.
Packed keys then order exactly like canonical pile tuples, so tie-breaks
compare single integers.

The oracle twins at the bottom skip the table entirely and compare
successors field-by-field instead, so they carry no packing limits.
"""

from cython.operator cimport dereference as deref
from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map

from candynim.errors import EngineError, InvariantError, MemoBudgetError, NoMovesError

DEF MAX_N = 31

cdef struct Entry:
    int64_t value
    int64_t ply_index
    int64_t new_size


cdef int _make_child(int64_t* arr, int n, int skip, int64_t ns, int64_t* out):
    """Copy arr minus index skip, with ns (if nonzero) inserted, kept descending."""
    cdef int j, m = 0
    cdef bint placed = ns == 0
    for j in range(n):
        if j == skip:
            continue
        if not placed and ns >= arr[j]:
            out[m] = ns
            m += 1
            placed = True
        out[m] = arr[j]
        m += 1
    if not placed:
        out[m] = ns
        m += 1
    return m


cdef int _cmp_pos(int64_t* a, int na, int64_t* b, int nb):
    """Lexicographic compare of two canonical positions (-1, 0, 1)."""
    cdef int j, n = na if na < nb else nb
    for j in range(n):
        if a[j] != b[j]:
            return -1 if a[j] < b[j] else 1
    if na == nb:
        return 0
    return -1 if na < nb else 1


cdef class NativeEngine:
    cdef unordered_map[uint64_t, Entry] table
    cdef int slots
    cdef int bits
    cdef uint64_t memo_cap
    cdef public unsigned long long hits
    cdef public unsigned long long misses

    def __cinit__(self, int slots, long long memo_cap):
        if not 1 <= slots <= MAX_N:
            raise EngineError(f"kernel takes 1..{MAX_N} pile slots, got {slots}")
        if memo_cap < 1:
            raise ValueError(f"table cap must be positive, got {memo_cap}")
        self.slots = slots
        self.bits = 62 // slots
        self.memo_cap = <uint64_t>memo_cap
        self.hits = 0
        self.misses = 0

    cdef uint64_t _pack(self, int64_t* arr, int n):
        cdef uint64_t key = 0
        cdef int j
        for j in range(self.slots):
            key <<= self.bits
            if j < n:
                key |= <uint64_t>arr[j]
        return key

    cdef int _load(self, piles, int64_t* arr) except -1:
        cdef int n = len(piles)
        cdef int j
        cdef int64_t cap = <int64_t>1 << self.bits
        if n > self.slots:
            raise EngineError(f"{n} piles exceed this engine's {self.slots} slots")
        for j in range(n):
            arr[j] = piles[j]
            if arr[j] >= cap:
                raise EngineError(
                    f"pile {piles[j]} does not fit {self.bits} bits; "
                    "widen the key or use the python engine"
                )
            if j and arr[j] > arr[j - 1]:
                raise EngineError("piles must be canonical (descending)")
        return n

    cdef int64_t _search(self, int64_t* arr, int n) except? -4611686018427387904:
        """Value of a loser-to-move (zero nim-sum) position."""
        if n == 0:
            return 0
        cdef uint64_t key = self._pack(arr, n)
        cdef unordered_map[uint64_t, Entry].iterator it = self.table.find(key)
        if it != self.table.end():
            self.hits += 1
            return deref(it).second.value
        self.misses += 1

        cdef int64_t buf[MAX_N]
        cdef int64_t p, ns, v, cg
        cdef int i, j, m
        cdef bint have = False
        cdef int64_t best_v = 0, best_i = 0, best_ns = 0
        cdef uint64_t best_key = 0, ckey
        for i in range(n):
            p = arr[i]
            for ns in range(p):
                m = _make_child(arr, n, i, ns, buf)
                if m == 0:
                    v = p
                else:
                    cg = 0
                    for j in range(m):
                        cg ^= buf[j]
                    if cg == 0:
                        v = (p - ns) + self._search(buf, m)
                    else:
                        v = (p - ns) + self._n_value(buf, m, cg)
                ckey = self._pack(buf, m)
                if (
                    not have
                    or v > best_v
                    or (
                        v == best_v
                        and (
                            ckey < best_key
                            or (ckey == best_key and (i < best_i or (i == best_i and ns < best_ns)))
                        )
                    )
                ):
                    have = True
                    best_v = v
                    best_key = ckey
                    best_i = i
                    best_ns = ns
        if self.table.size() >= self.memo_cap:
            raise MemoBudgetError(
                f"transposition table reached its cap of {self.memo_cap} entries; "
                "raise memo_cap to solve this position"
            )
        cdef Entry e
        e.value = best_v
        e.ply_index = best_i
        e.new_size = best_ns
        self.table[key] = e
        return best_v

    cdef int64_t _n_value(self, int64_t* arr, int n, int64_t g) except? -4611686018427387904:
        """Value of a winner-to-move position (g is its nonzero nim-sum)."""
        cdef int64_t buf[MAX_N]
        cdef int64_t target, v, best = 0
        cdef bint have = False
        cdef int i, m
        for i in range(n):
            target = g ^ arr[i]
            if target < arr[i]:
                m = _make_child(arr, n, i, target, buf)
                v = self._search(buf, m) - (arr[i] - target)
                if not have or v < best:
                    have = True
                    best = v
        if not have:
            raise InvariantError("no winning ply in an N position")
        return best

    def solve_value(self, piles):
        """Exact value of any position (either side to move)."""
        cdef int64_t arr[MAX_N]
        cdef int n = self._load(piles, arr)
        if n == 0:
            return 0
        cdef int64_t g = 0
        cdef int j
        for j in range(n):
            g ^= arr[j]
        if g == 0:
            return self._search(arr, n)
        return self._n_value(arr, n, g)

    def best_entry(self, piles):
        """(value, ply_index, new_size) of the tie-break-optimal ply."""
        cdef int64_t arr[MAX_N]
        cdef int64_t buf[MAX_N]
        cdef int n = self._load(piles, arr)
        if n == 0:
            raise NoMovesError("the empty game has no moves")
        cdef int64_t g = 0
        cdef int i, j, m
        for j in range(n):
            g ^= arr[j]
        cdef uint64_t key
        cdef unordered_map[uint64_t, Entry].iterator it
        if g == 0:
            self._search(arr, n)
            key = self._pack(arr, n)
            it = self.table.find(key)
            return (
                deref(it).second.value,
                <int>deref(it).second.ply_index,
                deref(it).second.new_size,
            )
        cdef int64_t target, v, best_v = 0, best_i = 0, best_ns = 0
        cdef uint64_t ckey, best_key = 0
        cdef bint have = False
        for i in range(n):
            target = g ^ arr[i]
            if target < arr[i]:
                m = _make_child(arr, n, i, target, buf)
                v = self._search(buf, m) - (arr[i] - target)
                ckey = self._pack(buf, m)
                if (
                    not have
                    or v < best_v
                    or (
                        v == best_v
                        and (
                            ckey < best_key
                            or (ckey == best_key and (i < best_i or (i == best_i and target < best_ns)))
                        )
                    )
                ):
                    have = True
                    best_v = v
                    best_key = ckey
                    best_i = i
                    best_ns = target
        return best_v, <int>best_i, best_ns

    def stats(self):
        return {
            "entries": <unsigned long long>self.table.size(),
            "hits": self.hits,
            "misses": self.misses,
            "cap": <unsigned long long>self.memo_cap,
        }


cdef int64_t _oracle(int64_t* arr, int n) except? -4611686018427387904:
    if n == 0:
        return 0
    cdef int64_t g = 0
    cdef int i, j, m
    for j in range(n):
        g ^= arr[j]
    cdef int64_t buf[MAX_N]
    cdef int64_t p, ns, target, v, best = 0
    cdef bint have = False
    if g == 0:
        for i in range(n):
            p = arr[i]
            for ns in range(p):
                m = _make_child(arr, n, i, ns, buf)
                v = (p - ns) + _oracle(buf, m)
                if not have or v > best:
                    have = True
                    best = v
    else:
        for i in range(n):
            target = g ^ arr[i]
            if target < arr[i]:
                m = _make_child(arr, n, i, target, buf)
                v = _oracle(buf, m) - (arr[i] - target)
                if not have or v < best:
                    have = True
                    best = v
    return best


cdef int _load_any(piles, int64_t* arr) except -1:
    cdef int n = len(piles)
    cdef int j
    if n > MAX_N:
        raise EngineError(f"kernel oracle takes at most {MAX_N} piles, got {n}")
    for j in range(n):
        arr[j] = piles[j]
        if j and arr[j] > arr[j - 1]:
            raise EngineError("piles must be canonical (descending)")
    return n


def oracle_value(piles):
    """Memoless reference value; exponential, for cross-checking only."""
    cdef int64_t arr[MAX_N]
    cdef int n = _load_any(piles, arr)
    return _oracle(arr, n)


def oracle_entry(piles):
    """Oracle twin of NativeEngine.best_entry, same tie-break."""
    cdef int64_t arr[MAX_N]
    cdef int64_t buf[MAX_N]
    cdef int64_t bbuf[MAX_N]
    cdef int n = _load_any(piles, arr)
    if n == 0:
        raise NoMovesError("the empty game has no moves")
    cdef int64_t g = 0
    cdef int i, j, m, bm = 0, c
    for j in range(n):
        g ^= arr[j]
    cdef int64_t p, ns, target, v
    cdef int64_t best_v = 0, best_i = 0, best_ns = 0
    cdef bint have = False
    cdef bint better
    if g == 0:
        for i in range(n):
            p = arr[i]
            for ns in range(p):
                m = _make_child(arr, n, i, ns, buf)
                v = (p - ns) + _oracle(buf, m)
                if not have or v > best_v:
                    better = True
                elif v == best_v:
                    c = _cmp_pos(buf, m, bbuf, bm)
                    better = c < 0 or (
                        c == 0 and (i < best_i or (i == best_i and ns < best_ns))
                    )
                else:
                    better = False
                if better:
                    have = True
                    best_v = v
                    best_i = i
                    best_ns = ns
                    bm = m
                    for j in range(m):
                        bbuf[j] = buf[j]
        return best_v, <int>best_i, best_ns
    for i in range(n):
        target = g ^ arr[i]
        if target < arr[i]:
            m = _make_child(arr, n, i, target, buf)
            v = _oracle(buf, m) - (arr[i] - target)
            if not have or v < best_v:
                better = True
            elif v == best_v:
                c = _cmp_pos(buf, m, bbuf, bm)
                better = c < 0 or (
                    c == 0 and (i < best_i or (i == best_i and target < best_ns))
                )
            else:
                better = False
            if better:
                have = True
                best_v = v
                best_i = i
                best_ns = target
                bm = m
                for j in range(m):
                    bbuf[j] = buf[j]
    return best_v, <int>best_i, best_ns
