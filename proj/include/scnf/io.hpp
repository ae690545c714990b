#pragma once

/// @file
/// Text formats: canonical network JSON (SCNFN or PBN, told apart by the
/// presence of "rules" or "nodes"), time-series CSV and literal filters.

#include <iosfwd>
#include <string>
#include <vector>

#include "scnf/learn.hpp"
#include "scnf/simulate.hpp"

namespace scnf::io {

inline constexpr int kFormatVersion = 1;

/// Node indices are 1-based and signed in clause lists; PBN tables are
/// bit strings whose character k is table entry k.
std::string dump_model(const Model& model);
Model parse_model(const std::string& text);

Model load_model(const std::string& path);
void save_model(const Model& model, const std::string& path);

/// Header x1..xN, rows of 0/1, a blank line between trajectories.
void write_series(std::ostream& out, const Dataset& data);
Dataset read_series(std::istream& in);
Dataset load_series(const std::string& path);
void save_series(const Dataset& data, const std::string& path);

/// JSON object mapping a 1-based node to the 1-based nodes whose literals
/// may appear in its clauses, e.g. {"1": [2, 5]}. Unlisted nodes are free.
LiteralFilter parse_literal_filter(const std::string& text, std::size_t n);
LiteralFilter load_literal_filter(const std::string& path, std::size_t n);

/// One bit string per non-empty line.
std::vector<State> read_states(std::istream& in);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace scnf::io
