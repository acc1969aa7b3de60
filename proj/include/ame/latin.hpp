#pragma once
// Latin squares, diagonal Latin squares, orthogonal pairs, and their
// conversion to permutation gates and AME states.
//
//   P = sum_{ij} |ij><K_ij L_ij|        (gate from an orthogonal pair)
//   |Psi> = (1/d) sum_{ij} |ij>|K_ij L_ij|
//
// ODLS pairs exist for every order except 2, 3 and 6.  Order 4 is embedded
// verbatim; odd orders coprime to 6 use linear squares a*i+b*j mod d.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ame/core.hpp"
#include "ame/states.hpp"

namespace ame {

// d x d array over symbols 1..d (stored 1-based to match the usual tables).
struct LatinSquare {
    int d = 0;
    std::vector<std::vector<int>> cells;

    int at(int i, int j) const { return cells[i][j]; }  // 0-based access
};

struct LatinViolation {
    bool row;    // row (true) or column (false)
    int index;   // 0-based row/column
    int symbol;  // duplicated or missing symbol
};

inline std::vector<LatinViolation> latin_violations(const LatinSquare& s) {
    std::vector<LatinViolation> v;
    for (int i = 0; i < s.d; ++i)
        for (int j = 0; j < s.d; ++j)
            if (s.cells[i][j] < 1 || s.cells[i][j] > s.d)
                throw std::out_of_range("latin: symbol outside 1..d at (" +
                                        std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    for (int i = 0; i < s.d; ++i) {
        std::vector<int> rc(s.d + 1, 0), cc(s.d + 1, 0);
        for (int j = 0; j < s.d; ++j) {
            rc[s.cells[i][j]]++;
            cc[s.cells[j][i]]++;
        }
        for (int sym = 1; sym <= s.d; ++sym) {
            if (rc[sym] > 1) v.push_back({true, i, sym});
            if (cc[sym] > 1) v.push_back({false, i, sym});
        }
    }
    return v;
}

inline bool validate_latin(const LatinSquare& s) { return latin_violations(s).empty(); }

// Both diagonals are transversals (d distinct symbols each).
inline bool is_diagonal(const LatinSquare& s) {
    if (!validate_latin(s)) throw std::invalid_argument("is_diagonal: not a Latin square");
    std::set<int> main, back;
    for (int i = 0; i < s.d; ++i) {
        main.insert(s.cells[i][i]);
        back.insert(s.cells[i][s.d - 1 - i]);
    }
    return (int)main.size() == s.d && (int)back.size() == s.d;
}

inline bool are_orthogonal(const LatinSquare& k, const LatinSquare& l) {
    if (k.d != l.d) throw std::invalid_argument("are_orthogonal: order mismatch");
    if (!validate_latin(k) || !validate_latin(l))
        throw std::invalid_argument("are_orthogonal: not Latin");
    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i < k.d; ++i)
        for (int j = 0; j < k.d; ++j)
            pairs.insert({k.cells[i][j], l.cells[i][j]});
    return (int)pairs.size() == k.d * k.d;
}

struct OlsPair {
    LatinSquare K, L;
    bool diagonal_flag = false;
};

// The order-4 ODLS instance, written as the (K,L) cell pairs of its table.
inline OlsPair odls4() {
    OlsPair p;
    p.K = {4, {{1, 3, 4, 2}, {4, 2, 1, 3}, {2, 4, 3, 1}, {3, 1, 2, 4}}};
    p.L = {4, {{2, 3, 1, 4}, {4, 1, 3, 2}, {3, 2, 4, 1}, {1, 4, 2, 3}}};
    p.diagonal_flag = true;
    return p;
}

// K = a1*i + b1*j, L = a2*i + b2*j mod d (0-based arithmetic, 1-based symbols).
// Diagonal iff a+-b are units; orthogonal iff a1*b2 - a2*b1 is a unit.
inline LatinSquare linear_square(int d, int a, int b) {
    LatinSquare s{d, std::vector<std::vector<int>>(d, std::vector<int>(d))};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            s.cells[i][j] = (a * i + b * j) % d + 1;
    return s;
}

inline OlsPair construct_odls(int d) {
    if (d == 2 || d == 3 || d == 6)
        throw std::domain_error("construct_odls: no orthogonal diagonal Latin squares of order " +
                                std::to_string(d));
    if (d == 4) return odls4();
    if (d % 2 == 1 && d % 3 != 0) {
        // slopes (1,2) and (1,3): 1+-2, 1+-3, and det 3-2=1 are all units mod d
        OlsPair p{linear_square(d, 1, 2), linear_square(d, 1, 3), true};
        return p;
    }
    throw std::domain_error("construct_odls: order " + std::to_string(d) + " not supported");
}

// Permutation gate of Eq-style P = sum |ij><K_ij L_ij|.
struct PermutationGate {
    int d = 0;
    // row (i,j) -> column (K_ij, L_ij), 0-based pairs
    std::vector<std::pair<int, int>> map;

    BipartiteOperator to_operator() const {
        BipartiteOperator p(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                auto [k, l] = map[i * d + j];
                p.at(i, j, k, l) = 1.0;
            }
        return p;
    }
};

inline PermutationGate gate_from_ols(const LatinSquare& k, const LatinSquare& l) {
    if (!are_orthogonal(k, l)) throw std::invalid_argument("gate_from_ols: pair not orthogonal");
    PermutationGate g;
    g.d = k.d;
    g.map.resize(k.d * k.d);
    for (int i = 0; i < k.d; ++i)
        for (int j = 0; j < k.d; ++j)
            g.map[i * k.d + j] = {k.cells[i][j] - 1, l.cells[i][j] - 1};
    return g;
}

// Multiply the unit entry in row (i,j) by the given unit-modulus phase.
// Phases are keyed by the domain cell (i,j), 0-based.
inline BipartiteOperator enphase(const PermutationGate& g,
                                 const std::map<std::pair<int, int>, cxd>& phases) {
    BipartiteOperator p = g.to_operator();
    for (const auto& [cell, ph] : phases) {
        auto [i, j] = cell;
        if (i < 0 || i >= g.d || j < 0 || j >= g.d)
            throw std::out_of_range("enphase: cell outside [d]x[d]");
        if (std::abs(std::abs(ph) - 1.0) > 1e-12)
            throw std::invalid_argument("enphase: phase is not unit modulus");
        auto [k, l] = g.map[i * g.d + j];
        p.at(i, j, k, l) *= ph;
    }
    return p;
}

inline StateVector ame_from_ols(const LatinSquare& k, const LatinSquare& l) {
    return vectorize(gate_from_ols(k, l).to_operator());
}

}  // namespace ame
