#include "sokogen/objective.hpp"

#include <algorithm>
#include <cctype>

namespace sokogen {

namespace {

std::string lower_trim(const std::string& s) {
    size_t begin = s.find_first_not_of(" \t");
    size_t end = s.find_last_not_of(" \t");
    if (begin == std::string::npos)
        return "";
    std::string out = s.substr(begin, end - begin + 1);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

int parse_order(const std::string& digits, const std::string& token) {
    if (digits.empty() || digits.size() > 1 || !std::isdigit(static_cast<unsigned char>(digits[0])))
        throw ParseError("bad PDB order in ordering token '" + token + "'");
    return digits[0] - '0';
}

FeatureSpec parse_token(const std::string& raw) {
    std::string token = lower_trim(raw);
    if (token.starts_with("w(pdb") && token.ends_with(")")) {
        int k = parse_order(token.substr(5, token.size() - 6), raw);
        return {FeatureKind::Novelty, k};
    }
    if (token.starts_with("pdb")) {
        int k = parse_order(token.substr(3), raw);
        return {FeatureKind::Heuristic, k};
    }
    if (token.ends_with("c")) {
        int k = parse_order(token.substr(0, token.size() - 1), raw);
        if (k < 2)
            throw ParseError("conflicts are defined for order >= 2; got '" + raw + "'");
        return {FeatureKind::Conflicts, k};
    }
    throw ParseError("unknown ordering token '" + raw + "'");
}

}  // namespace

OrderingSpec OrderingSpec::parse(const std::string& text) {
    OrderingSpec spec;
    size_t begin = 0;
    while (begin <= text.size()) {
        size_t comma = text.find(',', begin);
        std::string token = text.substr(begin, comma == std::string::npos ? std::string::npos
                                                                          : comma - begin);
        if (!lower_trim(token).empty())
            spec.features.push_back(parse_token(token));
        if (comma == std::string::npos)
            break;
        begin = comma + 1;
    }
    if (spec.features.empty())
        throw ParseError("empty ordering spec: '" + text + "'");
    for (size_t i = 0; i < spec.features.size(); ++i) {
        if (spec.features[i].kind == FeatureKind::Novelty && i != 0)
            throw ParseError("novelty must be the leading feature: '" + text + "'");
        if (spec.features[i].k < 1 || spec.features[i].k > 8)
            throw ParseError("PDB order out of range in '" + text + "'");
    }
    return spec;
}

std::string OrderingSpec::to_string() const {
    std::string out;
    for (const FeatureSpec& f : features) {
        if (!out.empty())
            out += ',';
        switch (f.kind) {
        case FeatureKind::Novelty:
            out += "w(pdb" + std::to_string(f.k) + ")";
            break;
        case FeatureKind::Conflicts:
            out += std::to_string(f.k) + "C";
            break;
        case FeatureKind::Heuristic:
            out += "pdb" + std::to_string(f.k);
            break;
        }
    }
    return out;
}

bool OrderingSpec::has_novelty() const {
    return !features.empty() && features.front().kind == FeatureKind::Novelty;
}

int OrderingSpec::max_pdb_order() const {
    int best = 1;
    for (const FeatureSpec& f : features)
        best = std::max(best, f.k);
    return best;
}

OrderingSpec OrderingSpec::without_novelty() const {
    OrderingSpec out;
    for (const FeatureSpec& f : features)
        if (f.kind != FeatureKind::Novelty)
            out.features.push_back(f);
    return out;
}

std::strong_ordering compare(std::span<const int64_t> a, std::span<const int64_t> b) {
    if (a.size() != b.size())
        throw ArityMismatch("objective vectors of size " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i])
            return std::strong_ordering::less;
        if (a[i] > b[i])
            return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

}  // namespace sokogen
