#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "koszul/matrix.hpp"
#include "koszul/ncpoly.hpp"

namespace koszul {

struct ParseError : KoszulError {
    size_t line, col;
    ParseError(size_t line_, size_t col_, const std::string& msg)
        : KoszulError("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                      ": " + msg),
          line(line_),
          col(col_) {}
};

struct Generator {
    std::string name;
    int weight = 1;
    bool weight_declared = false;
};

/// One filtered relation, stored as written: quadratic + linear + constant = 0
/// in A. With the paper's presentation A = k<V>/(r + a1(r) + a0(r)), the
/// linear part IS a1(r) and the constant IS a0(r).
struct FilteredRelation {
    Vec quadratic;  // coordinates in V (x) V, word (i,j) at index i*g + j
    Vec linear;     // coordinates in V
    FieldElement constant;
};

/// Finite bimodule with explicit basis: left/right action matrices per
/// generator, entry (r,c) = coefficient of basis_r in x . basis_c.
struct Bimodule {
    std::string name;
    size_t dim = 0;
    std::vector<Matrix> left;
    std::vector<Matrix> right;
};

class Presentation {
public:
    Field field = Field::rationals();
    std::vector<Generator> generators;
    std::vector<FilteredRelation> relations;
    std::map<std::string, Bimodule> bimodules;
    bool attest_koszul = false;

    size_t num_gens() const { return generators.size(); }
    int gen_index(const std::string& name) const;  // -1 if unknown
    int weight_of_word(const Word& w) const;
    bool weighted() const;  // all relations weight-homogeneous
    bool curved() const;    // some relation has a nonzero constant part
};

/// Parse the presentation-file format (see README). Throws ParseError with
/// line/column on bad input, including relation words of length > 2 and
/// unknown generator names.
Presentation parse_presentation(const std::string& text);

struct ValidationReport {
    size_t dim_R = 0;
    bool weighted = false;
    bool curved = false;
    size_t num_generators = 0;
    std::vector<std::string> notes;
};

/// Confirms the structural invariants. Throws on linearly dependent
/// quadratic parts or bimodules whose left/right actions fail to commute.
ValidationReport validate(const Presentation& p);

/// Parse one polynomial expression in the presentation's generators
/// (used for relations, and for CLI-supplied central elements).
NcPoly parse_element(const Presentation& p, const std::string& text);

}  // namespace koszul
