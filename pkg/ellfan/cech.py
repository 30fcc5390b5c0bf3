"""Cech complexes of sheaf terms over the nerve of a maximal-cone cover.

The complex is the reduced alternating one: one term per nonempty subset S of
maximal cones, in Cech degree |S| - 1, equal to the chart contribution of the
intersection cone. Derived fibers are computed column by column: a column
passes through a point e iff its support contains e, and there it contributes
the exterior algebra on the conormal space of the support (Koszul degree j)
tensored with the term's internal grading. The Cech differential acts by
exterior powers of the conormal inclusions.
"""
import itertools
import logging

from ellfan import settings
from ellfan.errors import ComplexError, ConeLimitError, DimensionMismatchError
from ellfan.fans import Cone, chart_weights, require_valid
from ellfan.lattice import as_lists, rational_det, rref_coordinates
from ellfan.local_model import hh_chart
from ellfan.sparse import SparseMatrix
from ellfan.symbol_generators import SymbolGenerator
from ellfan.utils import binomial, fold_mod_two


def nerve(count):
    """Nonempty subsets of range(count), by size then lexicographically."""
    subsets = []
    for k in range(1, count + 1):
        subsets.extend(itertools.combinations(range(count), k))
    return subsets


def intersection_cone(fan, subset):
    rays = set(fan.max_cones[subset[0]].ray_indices)
    for index in subset[1:]:
        rays &= set(fan.max_cones[index].ray_indices)
    return Cone(rays)


class SheafComplex(object):
    def __init__(self, ambient_rank, origin, index_sets, terms, cones=None):
        self.ambient_rank = ambient_rank
        self.origin = origin
        self.index_sets = sorted(index_sets, key=lambda s: (len(s), s))
        self.terms = terms
        self.cones = cones or {}
        self._conormal = {}
        self._checked = {}

    def term(self, subset):
        return self.terms[subset]

    def term_key(self, subset):
        cone = self.cones.get(subset)
        return cone.ray_indices if cone is not None else subset

    def nonzero_index_sets(self):
        return [s for s in self.index_sets if not self.terms[s].is_zero]

    def conormal(self, subset):
        key = self.term_key(subset)
        if key not in self._conormal:
            self._conormal[key] = self.terms[subset].support.conormal_rref()
        return self._conormal[key]

    def check_invariants(self):
        """Restriction maps exist along every inclusion S < S' of nonzero terms."""
        present = set(self.index_sets)
        by_key = {}
        for subset in self.nonzero_index_sets():
            term = self.terms[subset]
            key = self.term_key(subset)
            if key in by_key and by_key[key] != term:
                logging.log(logging.ERROR, "Index sets with the same intersection carry different terms.")
                raise ComplexError("terms differ on index sets with equal intersection cone")
            by_key.setdefault(key, term)
            for position in range(len(subset)):
                face = subset[:position] + subset[position + 1:]
                if not face or face not in present or self.terms[face].is_zero:
                    continue
                pair = (self.term_key(face), key)
                if pair not in self._checked:
                    self._checked[pair] = self.terms[face].support.contains(term.support)
                if not self._checked[pair]:
                    logging.log(logging.ERROR, "Support of " + str(subset) + " is not inside that of " + str(face))
                    raise ComplexError("missing restriction map from " + str(face) + " to " + str(subset))
        return True

    def as_dict(self):
        terms = []
        for subset in self.index_sets:
            term = self.terms[subset]
            cone = self.cones.get(subset)
            entry = {"subset": list(subset), "cone": cone.as_list() if cone is not None else None}
            entry.update(term.as_dict())
            terms.append(entry)
        return {"origin": self.origin, "ambient_rank": self.ambient_rank, "terms": terms}

    def __repr__(self):
        return "SheafComplex(" + str(self.origin) + ", " + str(len(self.index_sets)) + " index sets)"


def build_complex(fan, max_cones=None):
    require_valid(fan)
    cap = settings.max_cones(max_cones)
    count = len(fan.max_cones)
    if count > cap:
        logging.log(logging.ERROR, "Fan " + str(fan.name) + " has " + str(count) + " maximal cones, cap is " + str(cap))
        raise ConeLimitError("fan has " + str(count) + " maximal cones, more than the cap " + str(cap))
    by_cone = {}
    terms = {}
    cones = {}
    index_sets = nerve(count)
    for subset in index_sets:
        cone = intersection_cone(fan, subset)
        if cone not in by_cone:
            W_A, W_G = chart_weights(fan, cone)
            by_cone[cone] = hh_chart(W_A, W_G, fan.ambient_rank)
        terms[subset] = by_cone[cone]
        cones[subset] = cone
    logging.log(logging.INFO, "Built the Cech complex of " + str(fan.name) + ": " + str(len(index_sets)) +
                " index sets, " + str(len(by_cone)) + " distinct charts.")
    return SheafComplex(fan.ambient_rank, {"fan": fan.name}, index_sets, terms, cones)


def chart_complex(W_A, W_G, n=None):
    term = hh_chart(W_A, W_G, n)
    origin = {"chart": {"aweights": as_lists(W_A) if hasattr(W_A, "shape") else [list(r) for r in W_A],
                        "gweights": as_lists(W_G) if hasattr(W_G, "shape") else [list(r) for r in W_G]}}
    return SheafComplex(term.ambient_rank, origin, [(0,)], {(0,): term})


def _inclusion_matrix(source, target):
    """Columns: the source conormal basis in coordinates of the target RREF basis."""
    source_basis, _ = source
    target_basis, target_pivots = target
    columns = [rref_coordinates(v, target_basis, target_pivots) for v in source_basis]
    return [[columns[c][r] for c in range(len(columns))] for r in range(len(target_pivots))]


def exterior_power(matrix, target_dim, source_dim, j):
    """Nonzero entries (row, col, value) of the j-th exterior power, in combination order."""
    if j == 0:
        return [(0, 0, 1)]
    entries = []
    rows = list(itertools.combinations(range(target_dim), j))
    cols = list(itertools.combinations(range(source_dim), j))
    for a, row_set in enumerate(rows):
        for b, col_set in enumerate(cols):
            value = rational_det([[matrix[r][c] for c in col_set] for r in row_set])
            if value != 0:
                entries.append((a, b, value))
    return entries


class _GradedChains(object):
    """Cells keyed by (cech, koszul, internal) with per-column offsets."""

    def __init__(self):
        self.sizes = {}
        self.offsets = {}
        self.differentials = {}

    def allocate(self, cell, column, size):
        start = self.sizes.get(cell, 0)
        self.offsets.setdefault(cell, {})[column] = start
        self.sizes[cell] = start + size

    def differential(self, cell):
        target = (cell[0] + 1,) + tuple(cell[1:])
        if cell not in self.differentials:
            self.differentials[cell] = SparseMatrix(self.sizes.get(target, 0), self.sizes.get(cell, 0))
        return self.differentials[cell]

    def cohomology(self):
        ranks = dict((cell, matrix.rank()) for cell, matrix in self.differentials.items())
        result = {}
        for cell, size in self.sizes.items():
            incoming = (cell[0] - 1,) + tuple(cell[1:])
            h = size - ranks.get(cell, 0) - ranks.get(incoming, 0)
            if h:
                result[cell] = h
        return result

    def check_d_squared(self):
        for cell, first in self.differentials.items():
            nxt = (cell[0] + 1,) + tuple(cell[1:])
            second = self.differentials.get(nxt)
            if second is not None and not second.matmul(first).is_zero():
                return False
        return True


class FiberComplex(object):
    def __init__(self, point, columns, chains):
        self.point = point
        self.columns = columns
        self.chains = chains
        self.cell_cohomology = chains.cohomology()
        self.cohomology = {}
        for (c, j, i), h in self.cell_cohomology.items():
            t = c - j + i
            self.cohomology[t] = self.cohomology.get(t, 0) + h
        self.cohomology = dict((t, h) for t, h in sorted(self.cohomology.items()) if h)

    def total_dimension(self):
        return sum(self.cohomology.values())

    def chain_dimensions(self):
        return dict(self.chains.sizes)

    def bigraded(self):
        table = []
        for cell in sorted(self.chains.sizes):
            c, j, i = cell
            table.append({"cech": c, "koszul": j, "internal": i, "dimension": self.chains.sizes[cell],
                          "cohomology": self.cell_cohomology.get(cell, 0)})
        return table

    def euler_characteristic(self):
        return sum((-1) ** t * h for t, h in self.cohomology.items())

    def check_d_squared(self):
        return self.chains.check_d_squared()

    def as_dict(self):
        return {"point": self.point.as_dict(),
                "columns": [list(s) for s in self.columns],
                "bigraded": self.bigraded(),
                "cohomology": dict((str(t), h) for t, h in self.cohomology.items())}


def fiber_complex(complex_, e):
    if e.rank != complex_.ambient_rank:
        logging.log(logging.ERROR, "Fiber at a point of E^" + str(e.rank) + " of a complex over E^" +
                    str(complex_.ambient_rank))
        raise DimensionMismatchError("point and complex have different ranks")
    columns = [s for s in complex_.nonzero_index_sets() if complex_.terms[s].support.contains_point(e)]
    column_set = set(columns)
    chains = _GradedChains()
    for subset in columns:
        term = complex_.terms[subset]
        r = len(complex_.conormal(subset)[1])
        for j in range(r + 1):
            for i, m in sorted(term.multiplicity.items()):
                chains.allocate((len(subset) - 1, j, i), subset, binomial(r, j) * m)

    powers = {}
    for target in columns:
        if len(target) < 2:
            continue
        target_term = complex_.terms[target]
        target_conormal = complex_.conormal(target)
        r_target = len(target_conormal[1])
        for position in range(len(target)):
            source = target[:position] + target[position + 1:]
            if source not in column_set:
                continue
            sign = -1 if position % 2 else 1
            source_term = complex_.terms[source]
            source_conormal = complex_.conormal(source)
            r_source = len(source_conormal[1])
            key = (complex_.term_key(source), complex_.term_key(target))
            if key not in powers:
                matrix = _inclusion_matrix(source_conormal, target_conormal)
                powers[key] = [exterior_power(matrix, r_target, r_source, j) for j in range(r_source + 1)]
            c = len(source) - 1
            for i, m in source_term.multiplicity.items():
                m_target = target_term.multiplicity.get(i, 0)
                if m_target == 0:
                    continue
                if m_target != m:
                    logging.log(logging.ERROR, "Internal ranks " + str(m) + " and " + str(m_target) +
                                " in degree " + str(i) + " cannot be matched.")
                    raise ComplexError("internal multiplicities differ along a restriction")
                for j, entries in enumerate(powers[key]):
                    cell = (c, j, i)
                    d = chains.differential(cell)
                    col_start = chains.offsets[cell][source]
                    row_start = chains.offsets[(c + 1, j, i)][target]
                    for row, col, value in entries:
                        for k in range(m):
                            d.add(row_start + row * m + k, col_start + col * m + k, sign * value)
    fiber = FiberComplex(e, columns, chains)
    logging.log(logging.DEBUG, "Fiber at " + repr(e) + ": " + str(fiber.cohomology))
    return fiber


def expected_euler_characteristic(complex_, e):
    """Signed count over columns through e of codimension 0."""
    total = 0
    for subset in complex_.nonzero_index_sets():
        term = complex_.terms[subset]
        if term.support.codimension != 0 or not term.support.contains_point(e):
            continue
        internal = sum((-1) ** i * m for i, m in term.multiplicity.items())
        total += (-1) ** (len(subset) - 1) * internal
    return total


class GlobalSectionsComplex(object):
    def __init__(self, chains):
        self.chains = chains
        self.cell_cohomology = chains.cohomology()
        self.cohomology = {}
        for (c, i), h in self.cell_cohomology.items():
            self.cohomology[c + i] = self.cohomology.get(c + i, 0) + h
        self.cohomology = dict((t, h) for t, h in sorted(self.cohomology.items()) if h)

    def check_d_squared(self):
        return self.chains.check_d_squared()

    def as_dict(self):
        return {"chain_dimensions": [{"cech": c, "internal": i, "dimension": size}
                                     for (c, i), size in sorted(self.chains.sizes.items())],
                "cohomology": dict((str(t), h) for t, h in self.cohomology.items())}


def global_sections_complex(complex_, symbols=None):
    """Gamma of every term: one constant per connected component of its support."""
    symbols = symbols or SymbolGenerator()
    columns = complex_.nonzero_index_sets()
    column_set = set(columns)
    chains = _GradedChains()
    labels = {}
    for subset in columns:
        term = complex_.terms[subset]
        key = complex_.term_key(subset)
        if key not in labels:
            labels[key] = dict((label, n) for n, label in enumerate(term.support.component_labels()))
        for i, m in sorted(term.multiplicity.items()):
            chains.allocate((len(subset) - 1, i), subset, len(labels[key]) * m)

    matchings = {}
    for target in columns:
        if len(target) < 2:
            continue
        target_term = complex_.terms[target]
        target_key = complex_.term_key(target)
        for position in range(len(target)):
            source = target[:position] + target[position + 1:]
            if source not in column_set:
                continue
            sign = -1 if position % 2 else 1
            source_term = complex_.terms[source]
            source_key = complex_.term_key(source)
            pair = (source_key, target_key)
            if pair not in matchings:
                matching = {}
                for label, n in labels[target_key].items():
                    point = target_term.support.component_representative(label, symbols)
                    matching[n] = labels[source_key][source_term.support.component_index(point)]
                matchings[pair] = matching
            c = len(source) - 1
            for i, m in source_term.multiplicity.items():
                m_target = target_term.multiplicity.get(i, 0)
                if m_target == 0:
                    continue
                if m_target != m:
                    raise ComplexError("internal multiplicities differ along a restriction")
                d = chains.differential((c, i))
                col_start = chains.offsets[(c, i)][source]
                row_start = chains.offsets[(c + 1, i)][target]
                for row, col in matchings[pair].items():
                    for k in range(m):
                        d.add(row_start + row * m + k, col_start + col * m + k, sign)
    return GlobalSectionsComplex(chains)


def global_sections_cohomology(complex_, symbols=None):
    return global_sections_complex(complex_, symbols).cohomology


class StratificationReport(object):
    def __init__(self, supports, members, containments, point=None, through_point=None):
        self.supports = supports
        self.members = members
        self.containments = containments
        self.point = point
        self.through_point = through_point

    def supports_containing(self, e):
        return [z for z in self.supports if z.contains_point(e)]

    def as_dict(self):
        strata = []
        for n, support in enumerate(self.supports):
            entry = support.as_dict()
            entry["index"] = n
            entry["index_sets"] = [list(s) for s in self.members[n]]
            strata.append(entry)
        report = {"supports": strata, "containments": [[a, b] for a, b in self.containments]}
        if self.point is not None:
            report["point"] = self.point.as_dict()
            report["through_point"] = [list(s) for s in self.through_point]
        return report


def support_stratification(complex_, point=None):
    supports = []
    members = []
    seen = {}
    for subset in complex_.nonzero_index_sets():
        key = complex_.term_key(subset)
        if key not in seen:
            support = complex_.terms[subset].support
            found = None
            for n, other in enumerate(supports):
                if other == support:
                    found = n
                    break
            if found is None:
                supports.append(support)
                members.append([])
                found = len(supports) - 1
            seen[key] = found
        members[seen[key]].append(subset)
    containments = []
    for a, small in enumerate(supports):
        for b, big in enumerate(supports):
            if a != b and big.contains(small):
                containments.append((a, b))
    through = None
    if point is not None:
        through = [s for s in complex_.nonzero_index_sets() if complex_.terms[s].support.contains_point(point)]
    return StratificationReport(supports, members, containments, point, through)


def fold_periodic(dims):
    return fold_mod_two(dims)
