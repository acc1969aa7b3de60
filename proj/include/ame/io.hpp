#pragma once
// Text formats:
//
//   sparse operator  : header `d <int>`, then one line per nonzero
//                      `i j k l re im` with 1-based indices; `#` to end of
//                      line is a comment.  Dense operators are the same
//                      format with every entry listed.
//   Latin square     : `d <int>`, then d rows of d symbols; a file holding an
//                      orthogonal pair contains two squares separated by a
//                      blank line.
//   permutation tuple: four lines, each a space-separated image list.
//
// Writers emit 17 significant digits so round-trips preserve doubles.

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ame/core.hpp"
#include "ame/invariant.hpp"
#include "ame/latin.hpp"

namespace ame {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// strip comments; true if anything substantive remains
inline bool strip_line(std::string& line) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    return line.find_first_not_of(" \t\r\n") != std::string::npos;
}

[[noreturn]] inline void parse_fail(const std::string& what, int lineno) {
    throw ParseError(what + " (line " + std::to_string(lineno) + ")");
}

}  // namespace detail

inline BipartiteOperator read_sparse_operator(std::istream& in) {
    std::string line;
    int lineno = 0;
    int d = -1;
    BipartiteOperator op;
    while (std::getline(in, line)) {
        ++lineno;
        if (!detail::strip_line(line)) continue;
        std::istringstream ss(line);
        if (d < 0) {
            std::string tag;
            ss >> tag >> d;
            if (ss.fail() || tag != "d" || d < 1)
                detail::parse_fail("expected header 'd <int>'", lineno);
            op = BipartiteOperator(d);
            continue;
        }
        int i, j, k, l;
        double re, im;
        ss >> i >> j >> k >> l >> re >> im;
        if (ss.fail()) detail::parse_fail("expected 'i j k l re im'", lineno);
        if (i < 1 || i > d || j < 1 || j > d || k < 1 || k > d || l < 1 || l > d)
            detail::parse_fail("index outside 1.." + std::to_string(d), lineno);
        op.at(i - 1, j - 1, k - 1, l - 1) = cxd(re, im);
    }
    if (d < 0) throw ParseError("empty operator file");
    return op;
}

inline BipartiteOperator read_sparse_operator(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    return read_sparse_operator(f);
}

inline void write_sparse_operator(std::ostream& out, const BipartiteOperator& op,
                                  double drop = 0.0) {
    out << "d " << op.d << "\n";
    out << std::setprecision(17);
    for (const SparseEntry& e : op.nonzeros(drop))
        out << e.i + 1 << " " << e.j + 1 << " " << e.k + 1 << " " << e.l + 1 << " "
            << e.v.real() << " " << e.v.imag() << "\n";
}

inline void write_sparse_operator(const std::string& path, const BipartiteOperator& op,
                                  double drop = 0.0) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "' for writing");
    write_sparse_operator(f, op, drop);
}

namespace detail {

inline LatinSquare read_square_block(const std::vector<std::string>& lines, int& pos) {
    std::istringstream hs(lines[pos]);
    std::string tag;
    int d = 0;
    hs >> tag >> d;
    if (hs.fail() || tag != "d" || d < 1)
        throw ParseError("expected Latin-square header 'd <int>'");
    LatinSquare s{d, std::vector<std::vector<int>>(d, std::vector<int>(d))};
    for (int r = 0; r < d; ++r) {
        if (++pos >= (int)lines.size()) throw ParseError("truncated Latin square");
        std::istringstream ss(lines[pos]);
        for (int c = 0; c < d; ++c) {
            ss >> s.cells[r][c];
            if (ss.fail()) throw ParseError("bad Latin-square row " + std::to_string(r + 1));
            if (s.cells[r][c] < 1 || s.cells[r][c] > d)
                throw ParseError("Latin-square symbol outside 1.." + std::to_string(d) +
                                 " in row " + std::to_string(r + 1));
        }
    }
    ++pos;
    return s;
}

}  // namespace detail

// One square, or an orthogonal pair separated by a blank line.
inline std::vector<LatinSquare> read_latin_squares(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (detail::strip_line(line)) lines.push_back(line);
    std::vector<LatinSquare> out;
    int pos = 0;
    while (pos < (int)lines.size()) out.push_back(detail::read_square_block(lines, pos));
    if (out.empty()) throw ParseError("empty Latin-square file");
    return out;
}

inline std::vector<LatinSquare> read_latin_squares(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    return read_latin_squares(f);
}

inline void write_latin_squares(std::ostream& out, const std::vector<LatinSquare>& squares) {
    bool first = true;
    for (const LatinSquare& s : squares) {
        if (!first) out << "\n";
        first = false;
        out << "d " << s.d << "\n";
        for (int r = 0; r < s.d; ++r) {
            for (int c = 0; c < s.d; ++c) out << (c ? " " : "") << s.cells[r][c];
            out << "\n";
        }
    }
}

// Four image lists, 1-based on disk, e.g. the canonical n=4 tuple is
//   1 2 3 4 / 2 1 4 3 / 3 4 1 2 / 4 3 2 1.
inline PermTuple read_perm_tuple(std::istream& in) {
    std::vector<std::vector<int>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!detail::strip_line(line)) continue;
        std::istringstream ss(line);
        std::vector<int> img;
        int v;
        while (ss >> v) img.push_back(v);
        if (!img.empty()) rows.push_back(img);
    }
    if (rows.size() != 4) throw ParseError("permutation tuple needs exactly four lines");
    size_t n = rows[0].size();
    PermTuple t;
    t.n = (int)n;
    std::array<std::vector<int>*, 4> dst{&t.sigma, &t.tau, &t.rho, &t.lambda};
    for (int p = 0; p < 4; ++p) {
        if (rows[p].size() != n) throw ParseError("permutation image lists differ in length");
        std::vector<bool> seen(n, false);
        dst[p]->resize(n);
        for (size_t m = 0; m < n; ++m) {
            int v = rows[p][m];
            if (v < 1 || v > (int)n || seen[v - 1])
                throw ParseError("line " + std::to_string(p + 1) + " is not a permutation of 1.." +
                                 std::to_string(n));
            seen[v - 1] = true;
            (*dst[p])[m] = v - 1;
        }
    }
    return t;
}

inline PermTuple read_perm_tuple(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    return read_perm_tuple(f);
}

inline void write_perm_tuple(std::ostream& out, const PermTuple& t) {
    for (const std::vector<int>* p : {&t.sigma, &t.tau, &t.rho, &t.lambda}) {
        for (size_t m = 0; m < p->size(); ++m) out << (m ? " " : "") << (*p)[m] + 1;
        out << "\n";
    }
}

}  // namespace ame
