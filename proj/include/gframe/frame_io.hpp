#pragma once

#include <iosfwd>
#include <string>

#include "gframe/frame_builder.hpp"

namespace gframe {

/// Header row c0..c{n-1}, then one row of +1/-1 per frame row.
void write_sign_csv(std::ostream& out, const SignMatrix& frame);
/// First line "# " + provenance JSON, then header and residues in Z/p.
void write_exponent_csv(std::ostream& out, const ExponentFrame& frame);
/// Paired re_cK,im_cK columns at 17 significant digits.
void write_complex_csv(std::ostream& out, const ComplexFrame& frame);

/// Reads any of the three formats above. Exponent files need the provenance
/// line for p. Columns are normalized when `normalize` is set.
ComplexFrame read_frame_csv(std::istream& in, bool normalize = true);
ComplexFrame read_frame_file(const std::string& path, bool normalize = true);

/// Writes via a temporary file in the target directory (or GFRAME_SCRATCH_DIR
/// when set) and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace gframe
