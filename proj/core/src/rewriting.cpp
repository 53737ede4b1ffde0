#include "koszul/rewriting.hpp"

#include <algorithm>

namespace koszul {

namespace {

struct DeglexGreater {
    bool operator()(const Word& a, const Word& b) const { return deglex_less(b, a); }
};

// length-2 words sorted deg-lex descending; column order for the relation RREF
std::vector<size_t> descending_pair_columns(size_t g) {
    std::vector<size_t> cols(g * g);
    for (size_t k = 0; k < g * g; ++k) cols[k] = k;
    std::sort(cols.begin(), cols.end(), [g](size_t a, size_t b) {
        Word wa{static_cast<char>(a / g), static_cast<char>(a % g)};
        Word wb{static_cast<char>(b / g), static_cast<char>(b % g)};
        return deglex_less(wb, wa);
    });
    return cols;
}

}  // namespace

RewriteSystem RewriteSystem::build(const Presentation& p) {
    RewriteSystem rw;
    rw.pres_ = p;
    const Field& f = p.field;
    const size_t g = p.num_gens();
    rw.rule_index_.assign(g * g, -1);

    if (!p.relations.empty()) {
        // echelonize [quadratic (desc word order) | linear | constant]
        std::vector<size_t> cols = descending_pair_columns(g);
        const size_t qn = g * g;
        Matrix m(f, p.relations.size(), qn + g + 1);
        for (size_t r = 0; r < p.relations.size(); ++r) {
            const FilteredRelation& rel = p.relations[r];
            for (size_t k = 0; k < qn; ++k) m.at(r, k) = rel.quadratic[cols[k]];
            for (size_t i = 0; i < g; ++i) m.at(r, qn + i) = rel.linear[i];
            m.at(r, qn + g) = rel.constant;
        }
        std::vector<size_t> pivots;
        Matrix e = m.rref(&pivots);
        if (pivots.size() != p.relations.size() || (!pivots.empty() && pivots.back() >= qn))
            throw KoszulError("linearly dependent quadratic parts");
        for (size_t r = 0; r < pivots.size(); ++r) {
            FilteredRelation rel;
            rel.quadratic = zero_vec(f, qn);
            rel.linear = zero_vec(f, g);
            for (size_t k = 0; k < qn; ++k) rel.quadratic[cols[k]] = e.at(r, k);
            for (size_t i = 0; i < g; ++i) rel.linear[i] = e.at(r, qn + i);
            rel.constant = e.at(r, qn + g);
            size_t lead = cols[pivots[r]];
            rw.canonical_.push_back(std::move(rel));
            // rule: lead -> -(rest of relation)
            NcPoly rhs;
            for (size_t w = 0; w < qn; ++w) {
                if (w == lead) continue;
                const FieldElement& c = rw.canonical_.back().quadratic[w];
                if (f.is_zero(c)) continue;
                Word word{static_cast<char>(w / g), static_cast<char>(w % g)};
                nc_add_term(f, rhs, word, f.neg(c));
            }
            for (size_t i = 0; i < g; ++i) {
                const FieldElement& c = rw.canonical_.back().linear[i];
                if (!f.is_zero(c)) nc_add_term(f, rhs, Word(1, static_cast<char>(i)), f.neg(c));
            }
            if (!f.is_zero(rw.canonical_.back().constant))
                nc_add_term(f, rhs, Word(), f.neg(rw.canonical_.back().constant));
            rw.rule_index_[lead] = static_cast<int>(rw.rule_rhs_.size());
            rw.rule_rhs_.push_back(std::move(rhs));
        }
    }

    // diamond lemma on the length-3 overlaps of leading words
    const size_t g2 = g;
    size_t checked = 0;
    for (size_t a = 0; a < g2 && rw.confluence_.ok; ++a)
        for (size_t b = 0; b < g2 && rw.confluence_.ok; ++b) {
            if (rw.rule_index_[a * g + b] < 0) continue;
            for (size_t c = 0; c < g2 && rw.confluence_.ok; ++c) {
                if (rw.rule_index_[b * g + c] < 0) continue;
                ++checked;
                Word left_tail(1, static_cast<char>(c));
                Word right_head(1, static_cast<char>(a));
                NcPoly via_left = rw.reduce(
                    nc_mul(p.field, rw.rule_rhs_[rw.rule_index_[a * g + b]],
                           nc_monomial(p.field, left_tail, p.field.one())));
                NcPoly via_right = rw.reduce(
                    nc_mul(p.field, nc_monomial(p.field, right_head, p.field.one()),
                           rw.rule_rhs_[rw.rule_index_[b * g + c]]));
                if (!nc_equal(p.field, via_left, via_right)) {
                    rw.confluence_.ok = false;
                    rw.confluence_.failure = OverlapWitness{
                        static_cast<int>(a), static_cast<int>(b), static_cast<int>(c),
                        rw.poly_str(via_left), rw.poly_str(via_right)};
                }
            }
        }
    rw.confluence_.overlaps_checked = checked;
    return rw;
}

ConfluenceReport pbw_confluence_check(const Presentation& p) {
    return RewriteSystem::build(p).confluence();
}

bool RewriteSystem::is_normal_word(const Word& w) const {
    const size_t g = pres_.num_gens();
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (rule_index_[static_cast<size_t>(w[i]) * g + static_cast<size_t>(w[i + 1])] >= 0)
            return false;
    return true;
}

int RewriteSystem::rule_at(const Word& w, size_t& pos) const {
    const size_t g = pres_.num_gens();
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        int r = rule_index_[static_cast<size_t>(w[i]) * g + static_cast<size_t>(w[i + 1])];
        if (r >= 0) {
            pos = i;
            return r;
        }
    }
    return -1;
}

NcPoly RewriteSystem::reduce(const NcPoly& p) const {
    const Field& f = pres_.field;
    NcPoly out;
    std::map<Word, FieldElement, DeglexGreater> work;
    for (const auto& [w, c] : p)
        if (!f.is_zero(c)) work.emplace(w, c);
    while (!work.empty()) {
        auto it = work.begin();  // largest word first
        Word w = it->first;
        FieldElement c = it->second;
        work.erase(it);
        if (f.is_zero(c)) continue;
        size_t pos = 0;
        int rule = rule_at(w, pos);
        if (rule < 0) {
            nc_add_term(f, out, w, c);
            continue;
        }
        Word prefix = w.substr(0, pos);
        Word suffix = w.substr(pos + 2);
        for (const auto& [m, cm] : rule_rhs_[rule]) {
            Word nw = prefix + m + suffix;
            FieldElement nc = f.mul(c, cm);
            auto [jt, fresh] = work.emplace(nw, nc);
            if (!fresh) {
                f.add_in_place(jt->second, nc);
                if (f.is_zero(jt->second)) work.erase(jt);
            }
        }
    }
    return out;
}

NcPoly RewriteSystem::normal_form(const NcPoly& p) const {
    if (!confluence_.ok)
        throw KoszulError("normal_form called on a non-confluent presentation");
    return reduce(p);
}

NcPoly RewriteSystem::normal_form_word(const Word& w) const {
    return normal_form(nc_monomial(pres_.field, w, pres_.field.one()));
}

std::vector<Word> RewriteSystem::normal_words_of_weight(int target) const {
    std::vector<Word> out;
    if (target < 0) return out;
    const size_t g = pres_.num_gens();
    Word cur;
    // depth-first in generator order; every prefix of a normal word is normal
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (size_t gi = 0; gi < g; ++gi) {
            int wgt = pres_.generators[gi].weight;
            if (wgt > remaining) continue;
            if (!cur.empty() &&
                rule_index_[static_cast<size_t>(cur.back()) * g + gi] >= 0)
                continue;
            cur.push_back(static_cast<char>(gi));
            self(self, remaining - wgt);
            cur.pop_back();
        }
    };
    rec(rec, target);
    return out;
}

std::vector<Word> RewriteSystem::normal_words_up_to_length(size_t maxlen) const {
    std::vector<Word> out;
    const size_t g = pres_.num_gens();
    std::vector<Word> layer{Word()};
    out.push_back(Word());
    for (size_t len = 1; len <= maxlen; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (size_t gi = 0; gi < g; ++gi) {
                if (!w.empty() && rule_index_[static_cast<size_t>(w.back()) * g + gi] >= 0)
                    continue;
                next.push_back(w + static_cast<char>(gi));
            }
        for (const auto& w : next) out.push_back(w);
        layer = std::move(next);
    }
    return out;
}

std::string RewriteSystem::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    size_t i = 0;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += "*";
        out += pres_.generators[static_cast<size_t>(w[i])].name;
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string RewriteSystem::poly_str(const NcPoly& p) const {
    if (p.empty()) return "0";
    const Field& f = pres_.field;
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p) {
        std::string cs = f.str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        std::string mag = neg ? cs.substr(1) : cs;
        std::string term;
        if (w.empty())
            term = mag;
        else if (mag == "1")
            term = word_str(w);
        else if (mag.find('+') != std::string::npos || mag.find('-') != std::string::npos)
            term = "(" + mag + ")*" + word_str(w);
        else
            term = mag + "*" + word_str(w);
        out += first ? (neg ? "-" + term : term) : (neg ? " - " + term : " + " + term);
        first = false;
    }
    return out;
}

}  // namespace koszul
