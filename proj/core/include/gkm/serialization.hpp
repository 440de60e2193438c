#pragma once

#include <iosfwd>
#include <string>

#include "gkm/dynamics.hpp"
#include "gkm/finite_volume.hpp"
#include "gkm/graph.hpp"
#include "gkm/graphon.hpp"
#include "gkm/measure.hpp"
#include "gkm/picard.hpp"

namespace gkm {

/// Shortest round-tripping text for a double: 17 significant digits.
std::string format_double(double v);

/// {"kind": "constant", "p": ...}, {"kind": "small_world", "p", "h"},
/// {"kind": "nearest_neighbor", "h"} or {"kind": "step", "values": [[...]]}.
/// Custom graphons have no serialized form and throw std::invalid_argument.
std::string graphon_to_json(const Graphon& w);
/// Throws ParseError on malformed JSON, unknown kinds or unknown keys.
Graphon graphon_from_json(const std::string& text);

/// Header line "n=<n>" followed by n comma-separated rows.
void write_matrix_csv(std::ostream& out, const SquareMatrix& m);
/// The "n=" header is optional; rows must form a non-empty square matrix.
SquareMatrix read_matrix_csv(std::istream& in);

/// Header "cell,position,mass", one row per atom, cells 0-based and contiguous.
void write_family_csv(std::ostream& out, const MeasureFamily& family);
MeasureFamily read_family_csv(std::istream& in);

/// Header "cell,u_index,value".
void write_density_csv(std::ostream& out, const DensityField& field);
DensityField read_density_csv(std::istream& in);

/// Header "t,u_1,...,u_n,r,psi", one row per recorded state.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Per-iteration d_alpha and contraction ratio (null for the first).
std::string picard_report_json(const PicardReport& report);

/// Binary P5 graymap.
void write_pgm(std::ostream& out, const GrayImage& image);

}  // namespace gkm
