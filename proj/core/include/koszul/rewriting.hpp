#pragma once

#include <optional>

#include "koszul/presentation.hpp"

namespace koszul {

struct OverlapWitness {
    int k = -1, j = -1, i = -1;  // generator indices of the ambiguous word x_k x_j x_i
    std::string left_nf;         // the two distinct reductions, printed
    std::string right_nf;
};

struct ConfluenceReport {
    bool ok = true;
    std::optional<OverlapWitness> failure;
    size_t overlaps_checked = 0;
};

/// Quadratic-leading rewriting system in the deg-lex order induced by the
/// declared generator order. Relations are first brought to reduced row
/// echelon form over the length-2 words (largest word first), which makes
/// every rule's leading word its deg-lex maximum and all leading words
/// distinct; rewriting therefore terminates. The echelonized relations also
/// serve as the canonical basis of R = C^{-2} downstream.
class RewriteSystem {
public:
    static RewriteSystem build(const Presentation& p);

    const Presentation& pres() const { return pres_; }
    const std::vector<FilteredRelation>& canonical_relations() const { return canonical_; }
    const ConfluenceReport& confluence() const { return confluence_; }
    bool confluent() const { return confluence_.ok; }

    bool is_normal_word(const Word& w) const;
    /// Unique normal form. Throws if the presentation failed the confluence
    /// check (rejected for all downstream computations).
    NcPoly normal_form(const NcPoly& p) const;
    NcPoly normal_form_word(const Word& w) const;

    /// Normal words of the given total weight, lexicographic order.
    /// Weighted presentations only make sense here, but the enumeration is
    /// generic (weights default to 1).
    std::vector<Word> normal_words_of_weight(int w) const;
    /// All normal words of length <= maxlen (the PBW filtration for the
    /// truncated estimates), shortest first then lexicographic.
    std::vector<Word> normal_words_up_to_length(size_t maxlen) const;

    std::string word_str(const Word& w) const;    // "x1^2*x3", "1" for empty
    std::string poly_str(const NcPoly& p) const;  // canonical text

private:
    RewriteSystem() = default;
    NcPoly reduce(const NcPoly& p) const;  // no confluence guard (internal)
    int rule_at(const Word& w, size_t& pos) const;

    Presentation pres_;
    std::vector<FilteredRelation> canonical_;
    // rule for leading pair (a,b) at index a*g+b; -1 when no rule
    std::vector<int> rule_index_;
    std::vector<NcPoly> rule_rhs_;
    ConfluenceReport confluence_;
};

/// The diamond-lemma check behind the PBW/Koszulity hypothesis: every
/// length-3 overlap of leading words must reduce to a single normal form.
ConfluenceReport pbw_confluence_check(const Presentation& p);

}  // namespace koszul
