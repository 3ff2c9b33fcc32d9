#pragma once

#include <string>
#include <string_view>

#include "clusterlab/analysis.hpp"
#include "clusterlab/lattice.hpp"
#include "clusterlab/pattern.hpp"

namespace clusterlab {

/// Lattice JSON:
///   {"name": "...", "dimension": d, "generators": [["p/q", ..], ..],
///    "offsets": [[..], ..], "bond_generators": [[i, j, [u1, .., ud]], ..],
///    "direction": [..]}
/// Offset indices i, j are 1-based. Rationals are "p/q" strings or integers.
/// "bonds": [{"from": i, "to": j, "cell": [..]}, ..] is accepted in place of
/// "bond_generators". The writer emits the first form with string rationals.
LatticePtr parse_lattice_json(std::string_view text, const ValidationOptions& options = {});
std::string lattice_to_json(const LatticeSpec& lattice);

/// Pattern JSON: {"P1": [elem, ..], "P2": [elem, ..]} where elem is
/// {"site": [i, c1, .., cd]} or {"bond": [[i, c..], [j, c..]]}, 1-based i.
Pattern parse_pattern_json(const LatticeSpec& lattice, std::string_view text);
std::string pattern_to_json(const Pattern& p, int dimension);

/// Reads "n,value[,...]" rows. Lines starting with '#' are skipped except a
/// "#manifest:" line, whose lattice/class/measure/weights fields become the
/// table metadata. A header row starting with "n," is skipped. An empty
/// value field falls back to the next column (float-only partition output).
SeriesTable parse_series_csv(std::string_view text);

/// Writes to a temporary file next to path, then renames it into place.
void write_file_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace clusterlab
