#include "botdrift/topic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace botdrift::topic {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
    }

    std::size_t size_of(std::size_t x) { return size_[find(x)]; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace

std::string_view to_string(TopicClass c) noexcept {
    switch (c) {
        case TopicClass::single: return "single";
        case TopicClass::mixed: return "mixed";
        case TopicClass::infrequent: return "infrequent";
    }
    return "infrequent";
}

std::vector<bool> mark_duplicates(std::span<const text::NormalizedText> account_texts) {
    std::unordered_map<std::string_view, std::size_t> seen;
    for (const auto& t : account_texts) {
        if (!t.is_empty) {
            ++seen[t.cleaned];
        }
    }
    std::vector<bool> flags(account_texts.size(), false);
    for (std::size_t i = 0; i < account_texts.size(); ++i) {
        const auto& t = account_texts[i];
        flags[i] = !t.is_empty && seen[t.cleaned] >= 2;
    }
    return flags;
}

std::vector<std::string> shingles(std::string_view cleaned) {
    const auto toks = text::tokens(cleaned);
    std::vector<std::string> out;
    if (toks.size() == 1) {
        out.emplace_back(toks[0]);
    }
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        std::string s(toks[i]);
        s.push_back(' ');
        s.append(toks[i + 1]);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double jaccard(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    std::size_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    const std::size_t uni = a.size() + b.size() - common;
    return static_cast<double>(common) / static_cast<double>(uni);
}

std::vector<TopicClass> assign_topic_class(std::span<const text::NormalizedText> account_texts,
                                           const TopicParams& params) {
    const std::size_t n = account_texts.size();

    // Identical shingle sets (Jaccard 1) collapse to one representative, so
    // the quadratic pass runs over distinct sets only. std::map keeps the
    // representative order independent of record order.
    std::map<std::vector<std::string>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        groups[shingles(account_texts[i].cleaned)].push_back(i);
    }

    std::vector<const std::vector<std::string>*> reps;
    std::vector<const std::vector<std::size_t>*> members;
    reps.reserve(groups.size());
    for (const auto& [set, idx] : groups) {
        reps.push_back(&set);
        members.push_back(&idx);
    }

    DisjointSets ds(n);
    for (std::size_t g = 0; g < reps.size(); ++g) {
        const auto& idx = *members[g];
        if (!reps[g]->empty()) {
            for (std::size_t m = 1; m < idx.size(); ++m) {
                ds.unite(idx[0], idx[m]);
            }
        }
    }
    for (std::size_t a = 0; a < reps.size(); ++a) {
        const auto& sa = *reps[a];
        if (sa.empty()) {
            continue;
        }
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
            const auto& sb = *reps[b];
            if (sb.empty()) {
                continue;
            }
            const double lo = static_cast<double>(std::min(sa.size(), sb.size()));
            const double hi = static_cast<double>(std::max(sa.size(), sb.size()));
            if (lo / hi < params.theta) {
                continue;  // Jaccard <= min/max
            }
            if (jaccard(sa, sb) >= params.theta) {
                ds.unite((*members[a])[0], (*members[b])[0]);
            }
        }
    }

    std::vector<TopicClass> out(n, TopicClass::infrequent);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t size = ds.size_of(i);
        if (size >= params.k) {
            out[i] = TopicClass::single;
        } else if (size >= 2) {
            out[i] = TopicClass::mixed;
        }
    }
    return out;
}

}  // namespace botdrift::topic
