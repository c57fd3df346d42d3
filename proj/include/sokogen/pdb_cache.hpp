#pragma once

#include <string>

#include "sokogen/pdb.hpp"

namespace sokogen {

// Binary cache of the size-keyed pattern tables of one maze. Keyed by
// (maze layout hash, pattern-size range, sampling seed); a loaded cache is
// value-identical to rebuilding from scratch. Lazy (capped) tables are never
// written. The encoding is host-endian; the cache is a local artifact, not an
// interchange format.
std::string pdb_cache_path(const std::string& dir, const Maze& maze, int max_k, uint64_t seed);

// Populates `store` from the file; returns false when the file is missing or
// keyed differently.
bool load_pdb_cache(const std::string& path, const Maze& maze, int max_k, uint64_t seed,
                    const BoxTableStore& store);

void save_pdb_cache(const std::string& path, const Maze& maze, int max_k, uint64_t seed,
                    const BoxTableStore& store);

}  // namespace sokogen
