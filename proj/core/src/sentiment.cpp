#include "botdrift/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"

namespace botdrift::sentiment {

// Generated at configure time from data/sentiment_lexicon.txt.
extern const char* const kBundledLexiconText;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string_view strip_punct(std::string_view tok) {
    auto punct = [](char c) {
        return std::ispunct(static_cast<unsigned char>(c)) != 0 && c != '\'';
    };
    while (!tok.empty() && punct(tok.front())) {
        tok.remove_prefix(1);
    }
    while (!tok.empty() && (punct(tok.back()) || tok.back() == '\'')) {
        tok.remove_suffix(1);
    }
    return tok;
}

}  // namespace

std::string_view to_string(Polarity p) noexcept {
    switch (p) {
        case Polarity::positive: return "positive";
        case Polarity::negative: return "negative";
        case Polarity::neutral: return "neutral";
    }
    return "neutral";
}

void Lexicon::add(std::string token, double score) {
    if (!(score >= -1.0 && score <= 1.0)) {
        fail(ErrorCode::domain, "lexicon score for '" + token + "' outside [-1, 1]");
    }
    scores_.insert_or_assign(std::move(token), score);
}

void Lexicon::add_negation(std::string token) { negations_.insert(std::move(token)); }

const double* Lexicon::find(std::string_view token) const {
    auto it = scores_.find(std::string(token));
    return it == scores_.end() ? nullptr : &it->second;
}

bool Lexicon::is_negation(std::string_view token) const {
    return negations_.contains(std::string(token));
}

Lexicon Lexicon::parse(std::istream& in) {
    Lexicon lex;
    std::string line;
    std::size_t lineno = 0;
    bool negation_section = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        if (body == "[negations]") {
            negation_section = true;
            continue;
        }
        if (negation_section) {
            lex.add_negation(std::string(body));
            continue;
        }
        const auto split = body.find_first_of(" \t");
        if (split == std::string_view::npos) {
            fail(ErrorCode::config, "lexicon line " + std::to_string(lineno) + ": missing score");
        }
        const auto score = csv::parse_double(trim(body.substr(split)));
        if (!score) {
            fail(ErrorCode::config, "lexicon line " + std::to_string(lineno) + ": bad score");
        }
        lex.add(std::string(body.substr(0, split)), *score);
    }
    return lex;
}

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::io, "cannot open lexicon " + path);
    }
    return parse(in);
}

const Lexicon& Lexicon::bundled() {
    static const Lexicon lex = [] {
        std::istringstream in(kBundledLexiconText);
        return parse(in);
    }();
    return lex;
}

Polarity classify_sentiment(double score) {
    if (!(score >= -1.0 && score <= 1.0)) {
        fail(ErrorCode::domain, "sentiment score outside [-1, 1]");
    }
    if (score < -0.2) {
        return Polarity::negative;
    }
    if (score > 0.2) {
        return Polarity::positive;
    }
    return Polarity::neutral;
}

double score_sentiment(const text::NormalizedText& normalized, const Lexicon& lexicon) {
    double sum = 0.0;
    std::size_t hits = 0;
    bool negate_next = false;
    for (std::string_view raw : text::tokens(normalized.cleaned)) {
        const std::string_view tok = strip_punct(raw);
        if (const double* v = lexicon.find(tok)) {
            sum += negate_next ? -*v : *v;
            ++hits;
        }
        negate_next = lexicon.is_negation(tok);
    }
    if (hits == 0) {
        return 0.0;
    }
    return std::clamp(sum / static_cast<double>(hits), -1.0, 1.0);
}

}  // namespace botdrift::sentiment
