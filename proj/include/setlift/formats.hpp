#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace setlift {

/// Input error carrying the offending 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

/// Splits into whitespace tokens; '#' starts a comment.
inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

inline int parse_int(const std::string& tok, int line, const char* what) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    if (v < -kMaxElements || v > kMaxElements * 16)
        throw ParseError(line, std::string(what) + " out of range: " + tok);
    return int(v);
}

template <class F>
void for_each_line(const std::string& text, F&& f) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) f(++no, line);
}

}  // namespace detail

/// Family file: `elements <n>` then one `set <e1> <e2> …` line per set,
/// elements strictly increasing, 1-based. `#` comments, blank lines allowed.
inline SetFamily parse_family(const std::string& text) {
    std::optional<SetFamily> fam;
    detail::for_each_line(text, [&](int no, const std::string& line) {
        auto toks = detail::tokenize(line);
        if (toks.empty()) return;
        if (toks[0] == "elements") {
            if (fam) throw ParseError(no, "duplicate elements header");
            if (toks.size() != 2) throw ParseError(no, "expected: elements <n>");
            int n = detail::parse_int(toks[1], no, "element count");
            if (n < 1 || n > kMaxElements)
                throw ParseError(no, "element count must be in 1.." + std::to_string(kMaxElements));
            fam.emplace(Universe(n));
        } else if (toks[0] == "set") {
            if (!fam) throw ParseError(no, "set line before elements header");
            if (toks.size() < 2) throw ParseError(no, "empty set");
            Mask m(fam->ground_size());
            int prev = 0;
            for (size_t k = 1; k < toks.size(); ++k) {
                int e = detail::parse_int(toks[k], no, "element");
                if (e < 1 || e > fam->ground_size())
                    throw ParseError(no, "element out of range: " + std::to_string(e));
                if (e <= prev) throw ParseError(no, "elements must be strictly increasing");
                prev = e;
                m.set(e - 1);
            }
            if (fam->contains(m)) throw ParseError(no, "duplicate set " + set_to_string(m));
            fam->add(m);
        } else {
            throw ParseError(no, "unknown directive '" + toks[0] + "'");
        }
    });
    if (!fam) throw ParseError(1, "missing elements header");
    return *fam;
}

inline std::string serialize_family(const SetFamily& fam) {
    std::string out = "elements " + std::to_string(fam.ground_size()) + "\n";
    for (int i = 0; i < fam.size(); ++i) {
        out += "set";
        for (int e : fam.set(i).elements()) out += ' ' + std::to_string(e + 1);
        out += '\n';
    }
    return out;
}

/// Order file: `order <e1> … <en>`, least preferred first, 1-based.
inline LinearOrder parse_order(const std::string& text, int expected_n = -1) {
    std::optional<LinearOrder> ord;
    detail::for_each_line(text, [&](int no, const std::string& line) {
        auto toks = detail::tokenize(line);
        if (toks.empty()) return;
        if (toks[0] != "order") throw ParseError(no, "expected: order <e1> … <en>");
        if (ord) throw ParseError(no, "duplicate order line");
        std::vector<int> asc;
        for (size_t k = 1; k < toks.size(); ++k) {
            int e = detail::parse_int(toks[k], no, "element");
            if (e < 1 || int(toks.size()) - 1 < e) throw ParseError(no, "element out of range: " + std::to_string(e));
            asc.push_back(e - 1);
        }
        if (asc.empty()) throw ParseError(no, "empty order");
        try {
            ord = LinearOrder::from_ascending(std::move(asc));
        } catch (const std::invalid_argument& e) {
            throw ParseError(no, e.what());
        }
    });
    if (!ord) throw ParseError(1, "missing order line");
    if (expected_n >= 0 && ord->size() != expected_n)
        throw ParseError(1, "order lists " + std::to_string(ord->size()) + " elements, family has " +
                                std::to_string(expected_n));
    return *ord;
}

inline std::string serialize_order(const LinearOrder& o) {
    std::string out = "order";
    for (int e : o.ascending()) out += ' ' + std::to_string(e + 1);
    out += '\n';
    return out;
}

inline char cell_glyph(Cell c) {
    switch (c) {
        case Cell::LT: return '<';
        case Cell::GT: return '>';
        case Cell::EQ: return '~';
        case Cell::INC: return '?';
    }
    return '?';
}

/// Relation block: `relation <m>` then one `<i> <op> <j>` line per pair
/// i<j with op in {<, >, ~, ?}; 1-based family indices. Missing pairs
/// default to ?. The kind is inferred as the least kind fitting the cells.
inline PrefRelation parse_relation(const std::string& text, int expected_m = -1) {
    int m = -1;
    std::vector<Cell> cells;
    std::vector<bool> seen;
    detail::for_each_line(text, [&](int no, const std::string& line) {
        auto toks = detail::tokenize(line);
        if (toks.empty()) return;
        if (toks[0] == "relation") {
            if (m >= 0) throw ParseError(no, "duplicate relation header");
            if (toks.size() != 2) throw ParseError(no, "expected: relation <m>");
            m = detail::parse_int(toks[1], no, "relation size");
            if (m < 0) throw ParseError(no, "relation size must be nonnegative");
            cells.assign(size_t(m) * (m - 1) / 2, Cell::INC);
            seen.assign(cells.size(), false);
            return;
        }
        if (m < 0) throw ParseError(no, "cell line before relation header");
        if (toks.size() != 3 || toks[1].size() != 1) throw ParseError(no, "expected: <i> <op> <j>");
        int i = detail::parse_int(toks[0], no, "family index");
        int j = detail::parse_int(toks[2], no, "family index");
        if (i < 1 || i > m || j < 1 || j > m) throw ParseError(no, "family index out of range");
        if (i >= j) throw ParseError(no, "cell lines require i < j");
        Cell c;
        switch (toks[1][0]) {
            case '<': c = Cell::LT; break;
            case '>': c = Cell::GT; break;
            case '~': c = Cell::EQ; break;
            case '?': c = Cell::INC; break;
            default: throw ParseError(no, "unknown op '" + toks[1] + "'");
        }
        size_t idx = PrefRelation::pair_index(m, i - 1, j - 1);
        if (seen[idx]) throw ParseError(no, "duplicate cell for pair");
        seen[idx] = true;
        cells[idx] = c;
    });
    if (m < 0) throw ParseError(1, "missing relation header");
    if (expected_m >= 0 && m != expected_m)
        throw ParseError(1, "relation size " + std::to_string(m) + " does not match family size " +
                                std::to_string(expected_m));

    bool has_eq = false, has_inc = false;
    for (Cell c : cells) {
        has_eq |= c == Cell::EQ;
        has_inc |= c == Cell::INC;
    }
    RelKind kind = has_inc ? (has_eq ? RelKind::PREORDER : RelKind::PARTIAL)
                           : (has_eq ? RelKind::WEAK : RelKind::LINEAR);
    try {
        return PrefRelation::make(kind, m, std::move(cells));
    } catch (const std::invalid_argument& e) {
        throw ParseError(1, e.what());
    }
}

inline std::string serialize_relation(const PrefRelation& r) {
    std::string out = "relation " + std::to_string(r.size()) + "\n";
    for (int i = 0; i < r.size(); ++i)
        for (int j = i + 1; j < r.size(); ++j) {
            out += std::to_string(i + 1);
            out += ' ';
            out += cell_glyph(r.cell(i, j));
            out += ' ';
            out += std::to_string(j + 1);
            out += '\n';
        }
    return out;
}

}  // namespace setlift
