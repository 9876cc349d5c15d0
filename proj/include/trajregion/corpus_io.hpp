#pragma once

#include <iosfwd>
#include <string>

#include "trajregion/trajectory.hpp"

namespace trajregion {

// Corpus files are JSON Lines. Line 1 is a header record
//   {"format": "trajregion-corpus", "version": 1, "dim": d}
// and every following non-blank line is one trajectory
//   {"id": "...", "states": [[...], ...], "actions": [...], "reward": r}
// with "actions" optional. Errors carry the 1-based line number.

inline constexpr const char* kCorpusFormat = "trajregion-corpus";
inline constexpr int kCorpusVersion = 1;

Dataset read_corpus(std::istream& in);
Dataset read_corpus_file(const std::string& path);

void write_corpus(std::ostream& out, const Dataset& dataset);
void write_corpus_file(const std::string& path, const Dataset& dataset);

} // namespace trajregion
