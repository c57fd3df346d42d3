#include "sokogen/levels.hpp"

#include <fstream>
#include <sstream>

#include "sokogen/errors.hpp"

namespace sokogen {

std::vector<ParsedLevel> parse_xsb_collection(const std::string& text) {
    std::vector<ParsedLevel> levels;
    std::istringstream in(text);
    std::string line;
    std::string block;
    std::string pending_name;
    bool block_has_content = false;

    auto flush = [&]() {
        if (!block_has_content) {
            block.clear();
            return;
        }
        ParsedLevel level = parse_xsb(block);
        level.name = pending_name.empty() ? "level" + std::to_string(levels.size() + 1)
                                          : pending_name;
        levels.push_back(std::move(level));
        block.clear();
        pending_name.clear();
        block_has_content = false;
    };

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.starts_with(";")) {
            size_t begin = line.find_first_not_of("; \t");
            if (pending_name.empty() && begin != std::string::npos)
                pending_name = line.substr(begin);
            continue;
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            flush();
            continue;
        }
        block += line;
        block += '\n';
        block_has_content = true;
    }
    flush();
    return levels;
}

std::vector<ParsedLevel> load_xsb_file(const std::string& path) {
    return parse_xsb_collection(read_text_file(path));
}

std::string render_collection(const std::vector<NamedLevel>& levels) {
    std::string out;
    for (const NamedLevel& level : levels) {
        if (!level.name.empty()) {
            out += "; ";
            out += level.name;
            out += '\n';
        }
        out += level.xsb;
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace sokogen
