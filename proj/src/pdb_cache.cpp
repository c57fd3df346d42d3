#include "sokogen/pdb_cache.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace sokogen {

namespace {

constexpr char kMagic[8] = {'S', 'G', 'P', 'D', 'B', '1', '\n', '\0'};
constexpr uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
bool read_pod(std::istream& in, T& value) {
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    return static_cast<bool>(in);
}

}  // namespace

std::string pdb_cache_path(const std::string& dir, const Maze& maze, int max_k, uint64_t seed) {
    std::ostringstream name;
    name << dir << '/' << std::hex << maze.layout_hash() << "_k" << std::dec << max_k << "_s"
         << seed << ".pdb";
    return name.str();
}

bool load_pdb_cache(const std::string& path, const Maze& maze, int max_k, uint64_t seed,
                    const BoxTableStore& store) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return false;

    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
        return false;
    uint32_t version = 0;
    uint64_t maze_hash = 0;
    uint64_t file_seed = 0;
    uint32_t file_max_k = 0;
    uint32_t num_tables = 0;
    if (!read_pod(in, version) || version != kVersion)
        return false;
    if (!read_pod(in, maze_hash) || maze_hash != maze.layout_hash())
        return false;
    if (!read_pod(in, file_seed) || file_seed != seed)
        return false;
    if (!read_pod(in, file_max_k) || static_cast<int>(file_max_k) != max_k)
        return false;
    if (!read_pod(in, num_tables))
        return false;

    for (uint32_t t = 0; t < num_tables; ++t) {
        uint32_t num_boxes = 0;
        uint64_t count = 0;
        if (!read_pod(in, num_boxes) || !read_pod(in, count))
            return false;
        if (num_boxes < 1 || num_boxes > kMaxPatternBoxes)
            return false;
        std::vector<std::pair<BoxPatternState, int32_t>> entries;
        entries.reserve(count);
        for (uint64_t i = 0; i < count; ++i) {
            BoxPatternState s;
            s.n = static_cast<uint8_t>(num_boxes);
            for (uint32_t b = 0; b < num_boxes; ++b)
                if (!read_pod(in, s.cells[b]))
                    return false;
            int32_t d = 0;
            if (!read_pod(in, s.man) || !read_pod(in, d))
                return false;
            entries.emplace_back(s, d);
        }
        store.adopt(static_cast<int>(num_boxes),
                    std::make_shared<BoxPatternTable>(maze, static_cast<int>(num_boxes),
                                                      std::move(entries)));
    }
    return true;
}

void save_pdb_cache(const std::string& path, const Maze& maze, int max_k, uint64_t seed,
                    const BoxTableStore& store) {
    auto tables = store.snapshot();
    uint32_t num_tables = 0;
    for (const auto& [n, table] : tables)
        if (!table->lazy())
            ++num_tables;

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write PDB cache: " + path);
    out.write(kMagic, sizeof(kMagic));
    write_pod(out, kVersion);
    write_pod(out, maze.layout_hash());
    write_pod(out, seed);
    write_pod(out, static_cast<uint32_t>(max_k));
    write_pod(out, num_tables);
    for (const auto& [n, table] : tables) {
        if (table->lazy())
            continue;
        write_pod(out, static_cast<uint32_t>(n));
        auto entries = table->sorted_entries();
        write_pod(out, static_cast<uint64_t>(entries.size()));
        for (const auto& [state, d] : entries) {
            for (int b = 0; b < state.n; ++b)
                write_pod(out, state.cells[b]);
            write_pod(out, state.man);
            write_pod(out, d);
        }
    }
}

}  // namespace sokogen
