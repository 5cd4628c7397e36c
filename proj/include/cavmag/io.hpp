#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "cavmag/fit.hpp"
#include "cavmag/hybrid.hpp"

namespace cavmag::io {

enum class DataFormat { touchstone_s2p, csv_complex, csv_magnitude };

// Where a measured-data file lives and how its content is to be read.
struct DataFileDescriptor {
  std::string path;
  DataFormat format = DataFormat::csv_complex;
  double reference_ohm = 50.0;
};

// Classifies a data file by extension (.s2p / .csv); CSV files are peeked at
// to distinguish complex from magnitude-only column sets.
DataFileDescriptor describe_data_file(const std::string& path);

// Touchstone v1 two-port reader; extracts the S21 channel.  Version-2 files
// are rejected.
fit::Spectrum load_touchstone(const std::string& path);

// Spectrum CSV reader: freq_hz plus either (re_s21, im_s21) or a magnitude
// column (mag_s21 or mag_db_s21); the emitter's own mag_db column is accepted
// and ignored when re/im are present.
fit::Spectrum load_csv_spectrum(const std::string& path);

// Loads through a descriptor and fails if the parsed content does not match
// the declared format.
fit::Spectrum load_spectrum(const DataFileDescriptor& desc);

// Emits freq_hz, re_s21, im_s21, mag_db rows at 12 significant digits.
// Zero magnitude writes the -inf sentinel in the dB column.
void write_spectrum_csv(const std::string& path, const fit::Spectrum& spec);

// Grid file: one JSON header line carrying both axes, the value convention,
// angle and provenance, followed by a CSV matrix of |S21| in dB (rows = field
// ascending, columns = frequency ascending).
void write_grid_file(const std::string& path, const hybrid::FieldSweepMap& map);
hybrid::FieldSweepMap load_grid_file(const std::string& path);

nlohmann::json fit_result_to_json(const fit::FitResult& result);

// Serializes a JSON document with a trailing newline, atomically.
void write_json_file(const std::string& path, const nlohmann::json& doc);

// Writes via a temporary file in the same directory plus rename, so readers
// never observe a half-written file.
void atomic_write_text(const std::string& path, const std::string& content);

// Shortest-of-12-significant-digits decimal formatting used by all emitters.
std::string format_sig12(double v);

}  // namespace cavmag::io
