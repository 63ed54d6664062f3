#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace setlift {

/// Hard cap on universe size; reduction instances stay well below it.
inline constexpr int kMaxElements = 4096;

/// Dense bitmask over universe indices 0..n-1.
class Mask {
public:
    Mask() = default;
    explicit Mask(int n) : n_(n), words_((n + 63) / 64, 0) {}

    int universe_size() const { return n_; }

    bool test(int e) const { return (words_[e >> 6] >> (e & 63)) & 1; }
    void set(int e) { words_[e >> 6] |= uint64_t(1) << (e & 63); }
    void reset(int e) { words_[e >> 6] &= ~(uint64_t(1) << (e & 63)); }

    bool empty() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool subset_of(const Mask& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    Mask with(int e) const {
        Mask r = *this;
        r.set(e);
        return r;
    }
    Mask without(int e) const {
        Mask r = *this;
        r.reset(e);
        return r;
    }

    Mask operator|(const Mask& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a | b; }); }
    Mask operator&(const Mask& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a & b; }); }
    Mask operator-(const Mask& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a & ~b; }); }
    Mask operator^(const Mask& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a ^ b; }); }

    bool operator==(const Mask& o) const { return words_ == o.words_; }

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t w = words_[i];
            while (w) {
                int b = __builtin_ctzll(w);
                f(int(i) * 64 + b);
                w &= w - 1;
            }
        }
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int e) { out.push_back(e); });
        return out;
    }

    size_t hash() const {
        size_t h = 0xcbf29ce484222325ull;
        for (uint64_t w : words_) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return h;
    }

private:
    template <class F>
    Mask apply(const Mask& o, F&& f) const {
        Mask r(n_);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = f(words_[i], o.words_[i]);
        return r;
    }

    int n_ = 0;
    std::vector<uint64_t> words_;
};

struct MaskHash {
    size_t operator()(const Mask& m) const { return m.hash(); }
};

/// Ground set of n elements, named 1..n externally and 0..n-1 internally.
struct Universe {
    int n = 0;

    Universe() = default;
    explicit Universe(int count) : n(count) {
        if (n < 1 || n > kMaxElements)
            throw std::invalid_argument("universe size must be in 1.." + std::to_string(kMaxElements));
    }
};

/// Base linear order on the ground set, least preferred first.
class LinearOrder {
public:
    LinearOrder() = default;

    static LinearOrder natural(int n) {
        std::vector<int> asc(n);
        std::iota(asc.begin(), asc.end(), 0);
        return from_ascending(std::move(asc));
    }

    static LinearOrder from_ascending(std::vector<int> asc) {
        LinearOrder o;
        o.ascending_ = std::move(asc);
        int n = int(o.ascending_.size());
        o.rank_.assign(n, -1);
        for (int p = 0; p < n; ++p) {
            int e = o.ascending_[p];
            if (e < 0 || e >= n || o.rank_[e] != -1)
                throw std::invalid_argument("order is not a permutation of the universe");
            o.rank_[e] = p;
        }
        return o;
    }

    int size() const { return int(ascending_.size()); }
    int rank(int e) const { return rank_[e]; }
    int at(int pos) const { return ascending_[pos]; }
    const std::vector<int>& ascending() const { return ascending_; }

    bool less(int a, int b) const { return rank_[a] < rank_[b]; }

    bool operator==(const LinearOrder& o) const { return ascending_ == o.ascending_; }

private:
    std::vector<int> ascending_;
    std::vector<int> rank_;
};

inline LinearOrder invert(const LinearOrder& o) {
    std::vector<int> asc(o.ascending().rbegin(), o.ascending().rend());
    return LinearOrder::from_ascending(std::move(asc));
}

/// Least element of a nonempty set under the base order.
inline int min_of(const Mask& set, const LinearOrder& order) {
    int best = -1;
    set.for_each([&](int e) {
        if (best < 0 || order.less(e, best)) best = e;
    });
    if (best < 0) throw std::invalid_argument("min_of on empty set");
    return best;
}

/// Greatest element of a nonempty set under the base order.
inline int max_of(const Mask& set, const LinearOrder& order) {
    int best = -1;
    set.for_each([&](int e) {
        if (best < 0 || order.less(best, e)) best = e;
    });
    if (best < 0) throw std::invalid_argument("max_of on empty set");
    return best;
}

/// Indexed, duplicate-free list of nonempty subsets of one universe.
class SetFamily {
public:
    SetFamily() = default;
    explicit SetFamily(Universe u) : universe_(u) {}

    const Universe& universe() const { return universe_; }
    int ground_size() const { return universe_.n; }
    int size() const { return int(sets_.size()); }
    const Mask& set(int i) const { return sets_[i]; }
    const std::vector<Mask>& sets() const { return sets_; }

    /// Returns the new index; throws on empty or duplicate sets.
    int add(const Mask& s) {
        if (s.empty()) throw std::invalid_argument("family sets must be nonempty");
        if (index_.count(s)) throw std::invalid_argument("duplicate set in family");
        int idx = size();
        sets_.push_back(s);
        index_.emplace(s, idx);
        return idx;
    }

    /// Adds unless already present; returns the index either way.
    int add_dedup(const Mask& s) {
        if (s.empty()) throw std::invalid_argument("family sets must be nonempty");
        auto it = index_.find(s);
        if (it != index_.end()) return it->second;
        return add(s);
    }

    int index_of(const Mask& s) const {
        auto it = index_.find(s);
        return it == index_.end() ? -1 : it->second;
    }

    bool contains(const Mask& s) const { return index_.count(s) != 0; }

    /// Index of sets[i] ∪ {x}, or -1 when x ∈ sets[i] or the union is absent.
    int lift(int i, int x) const {
        if (sets_[i].test(x)) return -1;
        return index_of(sets_[i].with(x));
    }

private:
    Universe universe_;
    std::vector<Mask> sets_;
    std::unordered_map<Mask, int, MaskHash> index_;
};

inline SetFamily subfamily(const SetFamily& fam, std::span<const int> selection) {
    if (selection.empty()) throw std::invalid_argument("empty subfamily selection");
    SetFamily sub(fam.universe());
    for (int i : selection) {
        if (i < 0 || i >= fam.size()) throw std::invalid_argument("subfamily index out of range");
        sub.add(fam.set(i));
    }
    return sub;
}

/// Resolved pairwise comparison between two family members.
enum class Cell : uint8_t { LT, GT, EQ, INC };

inline Cell flip(Cell c) {
    if (c == Cell::LT) return Cell::GT;
    if (c == Cell::GT) return Cell::LT;
    return c;
}

/// RAW marks an unvalidated pairwise relation (Fishburn/Gärdenfors on
/// families where the definition happens to be intransitive).
enum class RelKind : uint8_t { LINEAR, WEAK, PARTIAL, PREORDER, RAW };

inline const char* kind_name(RelKind k) {
    switch (k) {
        case RelKind::LINEAR: return "linear";
        case RelKind::WEAK: return "weak";
        case RelKind::PARTIAL: return "partial";
        case RelKind::PREORDER: return "preorder";
        case RelKind::RAW: return "raw";
    }
    return "?";
}

/// Pairwise preference relation over family indices. Cells are stored for
/// unordered pairs {i,j} with i<j; the diagonal is an implicit EQ.
class PrefRelation {
public:
    PrefRelation() = default;

    /// Validates the cells against the declared kind and throws on violation.
    static PrefRelation make(RelKind kind, int m, std::vector<Cell> cells) {
        PrefRelation r;
        r.kind_ = kind;
        r.m_ = m;
        r.cells_ = std::move(cells);
        if (int(r.cells_.size()) != m * (m - 1) / 2)
            throw std::invalid_argument("relation cell count does not match family size");
        std::string err = r.validation_error();
        if (!err.empty()) throw std::invalid_argument("invalid " + std::string(kind_name(kind)) + " relation: " + err);
        return r;
    }

    /// All-INC relation of the given kind (valid for PARTIAL/PREORDER/RAW).
    static PrefRelation incomparable(RelKind kind, int m) {
        return make(kind, m, std::vector<Cell>(size_t(m) * (m - 1) / 2, Cell::INC));
    }

    int size() const { return m_; }
    RelKind kind() const { return kind_; }

    static size_t pair_index(int m, int i, int j) {
        // i < j required
        return size_t(i) * (2 * m - i - 1) / 2 + (j - i - 1);
    }

    Cell cell(int a, int b) const {
        if (a == b) return Cell::EQ;
        return a < b ? cells_[pair_index(m_, a, b)] : flip(cells_[pair_index(m_, b, a)]);
    }

    void set_cell(int a, int b, Cell c) {
        if (a == b) throw std::invalid_argument("cannot set diagonal cell");
        if (a < b)
            cells_[pair_index(m_, a, b)] = c;
        else
            cells_[pair_index(m_, b, a)] = flip(c);
    }

    bool lt(int a, int b) const { return cell(a, b) == Cell::LT; }
    bool leq(int a, int b) const {
        Cell c = cell(a, b);
        return c == Cell::LT || c == Cell::EQ;
    }

    const std::vector<Cell>& cells() const { return cells_; }

    bool same_cells(const PrefRelation& o) const { return m_ == o.m_ && cells_ == o.cells_; }
    bool operator==(const PrefRelation& o) const { return kind_ == o.kind_ && same_cells(o); }

    /// Empty string when the cells are consistent with the declared kind.
    std::string validation_error() const {
        auto allowed = [&](Cell c) {
            switch (kind_) {
                case RelKind::LINEAR: return c == Cell::LT || c == Cell::GT;
                case RelKind::WEAK: return c != Cell::INC;
                case RelKind::PARTIAL: return c != Cell::EQ;
                case RelKind::PREORDER: return true;
                case RelKind::RAW: return true;
            }
            return false;
        };
        for (Cell c : cells_)
            if (!allowed(c)) return "cell value not allowed for kind";
        if (kind_ == RelKind::RAW) return "";
        // Transitivity of ⪯ (LINEAR/WEAK/PREORDER) resp. of ≺ (PARTIAL).
        for (int a = 0; a < m_; ++a)
            for (int b = 0; b < m_; ++b) {
                if (a == b) continue;
                bool ab = kind_ == RelKind::PARTIAL ? lt(a, b) : leq(a, b);
                if (!ab) continue;
                for (int c = 0; c < m_; ++c) {
                    if (c == a || c == b) continue;
                    bool bc = kind_ == RelKind::PARTIAL ? lt(b, c) : leq(b, c);
                    if (!bc) continue;
                    bool ac = kind_ == RelKind::PARTIAL ? lt(a, c) : leq(a, c);
                    if (!ac)
                        return "transitivity violated at indices " + std::to_string(a) + "," + std::to_string(b) +
                               "," + std::to_string(c);
                }
            }
        return "";
    }

private:
    RelKind kind_ = RelKind::RAW;
    int m_ = 0;
    std::vector<Cell> cells_;
};

inline PrefRelation invert(const PrefRelation& r) {
    std::vector<Cell> cells = r.cells();
    for (Cell& c : cells) c = flip(c);
    return PrefRelation::make(r.kind(), r.size(), std::move(cells));
}

/// Restriction to a subfamily; cells are copied, the kind is preserved.
inline PrefRelation restrict(const PrefRelation& rel, const SetFamily& fam, std::span<const int> selection) {
    if (rel.size() != fam.size()) throw std::invalid_argument("relation size does not match family");
    if (selection.empty()) throw std::invalid_argument("empty restriction selection");
    int k = int(selection.size());
    std::vector<Cell> cells(size_t(k) * (k - 1) / 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            cells[PrefRelation::pair_index(k, i, j)] = rel.cell(selection[i], selection[j]);
    return PrefRelation::make(rel.kind(), k, std::move(cells));
}

/// Strict part of a preorder: indifference becomes incomparability.
inline PrefRelation strict_part(const PrefRelation& rel) {
    if (rel.kind() != RelKind::PREORDER) throw std::invalid_argument("strict_part expects a preorder");
    std::vector<Cell> cells = rel.cells();
    for (Cell& c : cells)
        if (c == Cell::EQ) c = Cell::INC;
    return PrefRelation::make(RelKind::PARTIAL, rel.size(), std::move(cells));
}

/// The axioms a relation can be checked against.
enum class AxiomId : uint8_t {
    DOM,
    SIMPLE_DOM,
    SET_DOM,
    MAX_DOM,
    EXT,
    IND,
    STRICT_IND,
    REV_IND,
    REV_STRICT_IND,
    WEAK_IND,
};

inline constexpr int kAxiomCount = 10;

inline const char* axiom_flag(AxiomId a) {
    switch (a) {
        case AxiomId::DOM: return "d";
        case AxiomId::SIMPLE_DOM: return "sd";
        case AxiomId::SET_DOM: return "setd";
        case AxiomId::MAX_DOM: return "maxd";
        case AxiomId::EXT: return "e";
        case AxiomId::IND: return "i";
        case AxiomId::STRICT_IND: return "si";
        case AxiomId::REV_IND: return "ri";
        case AxiomId::REV_STRICT_IND: return "rsi";
        case AxiomId::WEAK_IND: return "wi";
    }
    return "?";
}

/// Nonempty set of axiom flags.
class AxiomSet {
public:
    AxiomSet() = default;
    AxiomSet(std::initializer_list<AxiomId> ids) {
        for (AxiomId a : ids) add(a);
    }

    void add(AxiomId a) { bits_ |= uint16_t(1) << int(a); }
    bool has(AxiomId a) const { return (bits_ >> int(a)) & 1; }
    bool empty() const { return bits_ == 0; }

    bool subset_of(const AxiomSet& o) const { return (bits_ & ~o.bits_) == 0; }
    bool operator==(const AxiomSet& o) const { return bits_ == o.bits_; }

    template <class F>
    void for_each(F&& f) const {
        for (int i = 0; i < kAxiomCount; ++i)
            if ((bits_ >> i) & 1) f(AxiomId(i));
    }

    std::string to_string() const {
        std::string s;
        for_each([&](AxiomId a) {
            if (!s.empty()) s += ',';
            s += axiom_flag(a);
        });
        return s;
    }

private:
    uint16_t bits_ = 0;
};

/// Renders a set with 1-based element names, e.g. {2,4}.
inline std::string set_to_string(const Mask& m) {
    std::string s = "{";
    bool first = true;
    m.for_each([&](int e) {
        if (!first) s += ',';
        s += std::to_string(e + 1);
        first = false;
    });
    s += '}';
    return s;
}

}  // namespace setlift
