#pragma once

#include <string>
#include <vector>

#include "sokogen/sokoban.hpp"

namespace sokogen {

// Multi-level XSB collections: levels separated by blank lines, optional
// '; name' comment lines attached to the following level.
std::vector<ParsedLevel> parse_xsb_collection(const std::string& text);

std::vector<ParsedLevel> load_xsb_file(const std::string& path);

struct NamedLevel {
    std::string name;
    std::string xsb;  // emitted level text
};

std::string render_collection(const std::vector<NamedLevel>& levels);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace sokogen
