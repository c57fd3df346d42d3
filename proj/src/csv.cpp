#include "sokogen/csv.hpp"

#include <sstream>

#include "sokogen/pdb.hpp"

namespace sokogen {

namespace {

std::string metric(const std::optional<int64_t>& v) {
    if (!v)
        return "";
    if (*v >= kUnreachable)
        return "inf";
    return std::to_string(*v);
}

std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string csv_header() {
    return "level_id,method,expansions,h_pdb1,h_pdb2,h_pdb3,h_pdb4,c2,c3,c4,solved,plan_pushes,"
           "wall_ms,seed";
}

std::string csv_line(const CsvRow& row) {
    std::ostringstream out;
    out << quote_if_needed(row.level_id) << ',' << quote_if_needed(row.method) << ','
        << row.expansions << ',' << metric(row.h_pdb1) << ',' << metric(row.h_pdb2) << ','
        << metric(row.h_pdb3) << ',' << metric(row.h_pdb4) << ',' << metric(row.c2) << ','
        << metric(row.c3) << ',' << metric(row.c4) << ',';
    if (row.solved)
        out << *row.solved;
    out << ',';
    if (row.plan_pushes)
        out << *row.plan_pushes;
    out << ',' << static_cast<uint64_t>(row.wall_ms) << ',' << row.seed;
    return out.str();
}

}  // namespace sokogen
