#include "crnbal/parser.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

#include "crnbal/error.hpp"

namespace crnbal {

namespace {

[[noreturn]] void syntax_fail(std::size_t line, std::size_t col, const std::string& msg) {
    fail(ErrorCode::SyntaxError,
         "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

[[noreturn]] void unknown_token_fail(std::size_t line, std::size_t col, char c) {
    fail(ErrorCode::UnknownToken, "line " + std::to_string(line) + ", column " +
                                      std::to_string(col) + ": unknown token '" +
                                      std::string(1, c) + "'");
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::size_t skip_ws(const std::string& s, std::size_t i, std::size_t end) {
    while (i < end && is_space(s[i])) ++i;
    return i;
}

std::size_t rtrim(const std::string& s, std::size_t begin, std::size_t end) {
    while (end > begin && is_space(s[end - 1])) --end;
    return end;
}

bool is_species_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_species_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

// Characters the grammar can ever produce; anything else is an unknown token
// rather than a known token in the wrong place.
bool is_grammar_char(char c) {
    if (is_species_char(c) || is_space(c)) return true;
    return std::string_view("+*<->;=,./#").find(c) != std::string_view::npos;
}

// Rate labels additionally allow '-' (e.g. the default backward labels k-1,
// k-2, ...); they must start with a letter so they never collide with numbers.
bool is_rate_label(const std::string& s) {
    if (s.empty() || std::isalpha(static_cast<unsigned char>(s[0])) == 0) return false;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_' && c != '-') return false;
    return true;
}

using SparseComplex = std::vector<std::pair<std::string, std::int64_t>>;

void parse_term(const std::string& line, std::size_t lineno, std::size_t begin, std::size_t end,
                SparseComplex& out) {
    std::size_t b = skip_ws(line, begin, end);
    std::size_t e = rtrim(line, b, end);
    if (b >= e) syntax_fail(lineno, begin + 1, "empty term in complex");
    std::int64_t coeff = 1;
    if (is_digit(line[b])) {
        std::size_t d = b;
        while (d < e && is_digit(line[d])) ++d;
        try {
            coeff = std::stoll(line.substr(b, d - b));
        } catch (const std::out_of_range&) {
            syntax_fail(lineno, b + 1, "stoichiometric coefficient out of range");
        }
        if (coeff == 0) syntax_fail(lineno, b + 1, "zero stoichiometric coefficient");
        b = skip_ws(line, d, e);
        if (b < e && line[b] == '*') b = skip_ws(line, b + 1, e);
    }
    if (b >= e || !is_species_start(line[b])) {
        if (b < e && !is_grammar_char(line[b])) unknown_token_fail(lineno, b + 1, line[b]);
        syntax_fail(lineno, b + 1, "expected a species name");
    }
    std::size_t n = b;
    while (n < e && is_species_char(line[n])) ++n;
    std::size_t rest = skip_ws(line, n, e);
    if (rest != e) {
        if (!is_grammar_char(line[rest])) unknown_token_fail(lineno, rest + 1, line[rest]);
        syntax_fail(lineno, rest + 1, "unexpected character after species name");
    }
    out.emplace_back(line.substr(b, n - b), coeff);
}

void parse_complex(const std::string& line, std::size_t lineno, std::size_t begin,
                   std::size_t end, SparseComplex& out) {
    std::size_t b = skip_ws(line, begin, end);
    std::size_t e = rtrim(line, b, end);
    if (b >= e) syntax_fail(lineno, begin + 1, "empty complex");
    if (e - b == 1 && line[b] == '0') return;  // the empty complex
    std::size_t pos = b;
    while (true) {
        std::size_t plus = line.find('+', pos);
        if (plus == std::string::npos || plus >= e) plus = e;
        parse_term(line, lineno, pos, plus, out);
        if (plus >= e) break;
        pos = plus + 1;
    }
}

struct RateSide {
    bool numeric = false;
    Rat value;
    std::string label;
};

RateSide parse_rate_value(const std::string& line, std::size_t lineno, std::size_t begin,
                          std::size_t end) {
    std::size_t b = skip_ws(line, begin, end);
    std::size_t e = rtrim(line, b, end);
    if (b >= e) syntax_fail(lineno, begin + 1, "missing rate value");
    const std::string tok = line.substr(b, e - b);
    const char c = tok[0];
    if (is_digit(c) || c == '+' || c == '-' || c == '.') {
        Rat v;
        try {
            v = parse_rational(tok);
        } catch (const Error&) {
            syntax_fail(lineno, b + 1, "malformed rate value '" + tok + "'");
        }
        if (v <= 0)
            fail(ErrorCode::NegativeOrZeroRate,
                 "line " + std::to_string(lineno) + ": rate value " + tok + " is not positive");
        return {true, v, {}};
    }
    if (!is_rate_label(tok)) syntax_fail(lineno, b + 1, "malformed rate label '" + tok + "'");
    return {false, Rat(), tok};
}

RateSide parse_keyed_rate(const std::string& line, std::size_t lineno, std::size_t begin,
                          std::size_t end, const char* key) {
    std::size_t b = skip_ws(line, begin, end);
    const std::size_t klen = std::char_traits<char>::length(key);
    if (line.compare(b, klen, key) != 0)
        syntax_fail(lineno, b + 1, std::string("expected '") + key + "='");
    b = skip_ws(line, b + klen, end);
    if (b >= end || line[b] != '=')
        syntax_fail(lineno, b + 1, std::string("expected '=' after '") + key + "'");
    return parse_rate_value(line, lineno, b + 1, end);
}

}  // namespace

const Rat& RateAssignment::at(const std::string& label) const {
    auto it = values.find(label);
    if (it == values.end())
        fail(ErrorCode::IncompleteRates, "no value assigned to rate label " + label);
    return it->second;
}

bool RateAssignment::complete(const ReactionNetwork& net) const {
    for (const auto& label : net.rate_labels())
        if (values.count(label) == 0) return false;
    return true;
}

ParsedNetwork parse_network(const std::string& text) {
    struct PendingReaction {
        SparseComplex lhs, rhs;
        std::string forward_label, backward_label;
    };
    std::vector<std::string> species;
    std::map<std::string, std::size_t> species_index;
    std::vector<PendingReaction> pending;
    RateAssignment rates;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::size_t b = skip_ws(line, 0, line.size());
        const std::size_t e = rtrim(line, b, line.size());
        if (b >= e) continue;

        const std::size_t arrow = line.find("<->", b);
        if (arrow == std::string::npos || arrow >= e) {
            for (const char* half : {"->", "<-"}) {
                const std::size_t one = line.find(half, b);
                if (one != std::string::npos && one < e)
                    syntax_fail(lineno, one + 1,
                                std::string("irreversible arrow '") + half +
                                    "'; every reaction must be reversible ('<->')");
            }
            syntax_fail(lineno, b + 1, "expected '<->' between complexes");
        }

        PendingReaction pr;
        parse_complex(line, lineno, b, arrow, pr.lhs);
        const std::size_t rhs_begin = arrow + 3;
        std::size_t semi = line.find(';', rhs_begin);
        if (semi != std::string::npos && semi >= e) semi = std::string::npos;
        parse_complex(line, lineno, rhs_begin, semi == std::string::npos ? e : semi, pr.rhs);

        const std::string def_f = "k" + std::to_string(pending.size() + 1);
        const std::string def_b = "k-" + std::to_string(pending.size() + 1);
        if (semi != std::string::npos) {
            std::size_t comma = line.find(',', semi + 1);
            if (comma == std::string::npos || comma >= e)
                syntax_fail(lineno, semi + 2, "expected 'kf=..., kr=...'");
            const RateSide f = parse_keyed_rate(line, lineno, semi + 1, comma, "kf");
            const RateSide r = parse_keyed_rate(line, lineno, comma + 1, e, "kr");
            pr.forward_label = f.numeric ? def_f : f.label;
            pr.backward_label = r.numeric ? def_b : r.label;
            if (f.numeric) rates.values[pr.forward_label] = f.value;
            if (r.numeric) rates.values[pr.backward_label] = r.value;
        } else {
            pr.forward_label = def_f;
            pr.backward_label = def_b;
        }

        for (const SparseComplex* sc : {&pr.lhs, &pr.rhs})
            for (const auto& [name, coeff] : *sc) {
                (void)coeff;
                if (species_index.emplace(name, species.size()).second) species.push_back(name);
            }
        pending.push_back(std::move(pr));
    }

    std::vector<ReversibleReaction> reactions;
    reactions.reserve(pending.size());
    for (auto& pr : pending) {
        ReversibleReaction rxn;
        rxn.reactant.assign(species.size(), 0);
        rxn.product.assign(species.size(), 0);
        for (const auto& [name, coeff] : pr.lhs) rxn.reactant[species_index[name]] += coeff;
        for (const auto& [name, coeff] : pr.rhs) rxn.product[species_index[name]] += coeff;
        rxn.forward_label = std::move(pr.forward_label);
        rxn.backward_label = std::move(pr.backward_label);
        reactions.push_back(std::move(rxn));
    }
    return {ReactionNetwork::build(std::move(species), std::move(reactions)), std::move(rates)};
}

namespace {

std::string complex_to_string(const std::vector<std::string>& species, const Complex& c) {
    std::string out;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        if (!out.empty()) out += " + ";
        if (c[j] != 1) out += std::to_string(c[j]);
        out += species[j];
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string serialize_network(const ReactionNetwork& net, const RateAssignment& rates) {
    std::string out;
    const auto& rxns = net.reactions();
    for (std::size_t i = 0; i < rxns.size(); ++i) {
        const auto& r = rxns[i];
        const std::string def_f = "k" + std::to_string(i + 1);
        const std::string def_b = "k-" + std::to_string(i + 1);
        auto side = [&](const std::string& label, const std::string& def) {
            if (label == def && rates.has(label)) return rat_string(rates.values.at(label));
            return label;
        };
        out += complex_to_string(net.species(), r.reactant) + " <-> " +
               complex_to_string(net.species(), r.product) +
               " ; kf=" + side(r.forward_label, def_f) + ", kr=" + side(r.backward_label, def_b) +
               "\n";
    }
    return out;
}

RateAssignment parse_rate_file(const std::string& text) {
    RateAssignment out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::size_t b = skip_ws(line, 0, line.size());
        const std::size_t e = rtrim(line, b, line.size());
        if (b >= e) continue;
        const std::size_t eq = line.find('=', b);
        if (eq == std::string::npos || eq >= e)
            syntax_fail(lineno, b + 1, "expected 'label = value'");
        const std::string label = line.substr(b, rtrim(line, b, eq) - b);
        if (!is_rate_label(label)) syntax_fail(lineno, b + 1, "malformed rate label '" + label + "'");
        std::size_t vb = skip_ws(line, eq + 1, e);
        const std::string value_text = line.substr(vb, e - vb);
        Rat v;
        try {
            v = parse_rational(value_text);
        } catch (const Error&) {
            syntax_fail(lineno, vb + 1, "malformed rate value '" + value_text + "'");
        }
        if (v <= 0)
            fail(ErrorCode::NegativeOrZeroRate, "line " + std::to_string(lineno) + ": rate value " +
                                                 value_text + " is not positive");
        if (!out.values.emplace(label, std::move(v)).second)
            fail(ErrorCode::DuplicateRateLabel,
                 "line " + std::to_string(lineno) + ": rate label " + label + " assigned twice");
    }
    return out;
}

}  // namespace crnbal
