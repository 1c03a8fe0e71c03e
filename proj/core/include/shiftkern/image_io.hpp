#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shiftkern/image_buffer.hpp"

namespace shiftkern {

enum class IoErrc {
  CannotOpen,
  CannotWrite,
  MalformedHeader,
  UnexpectedEnd,
  ZeroMaxval,
  SampleOutOfRange,
};

class IoError : public std::runtime_error {
public:
  IoError(IoErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  IoErrc code() const noexcept { return code_; }

private:
  IoErrc code_;
};

/// Decodes P2 (ASCII) or P5 (binary, big-endian when maxval > 255) PGM data.
/// Header comments starting with '#' are skipped. Samples are rescaled to
/// [0, 255] as v * 255 / maxval.
ImageBuffer parse_pgm(std::string_view bytes);
ImageBuffer read_pgm(const std::filesystem::path& path);

/// Canonical P5: "P5\n<w> <h>\n<maxval>\n" then samples v * maxval / 255,
/// clamped to [0, maxval] and rounded half-to-even.
std::string encode_pgm(const ImageBuffer& image, int maxval = 255);
void write_pgm(const ImageBuffer& image, const std::filesystem::path& path, int maxval = 255);

struct CsvMatrix {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Header row, then one line per row with 17 significant digits.
std::string format_csv(const CsvMatrix& matrix);
void write_csv_matrix(const CsvMatrix& matrix, const std::filesystem::path& path);

/// Shortest decimal with 17 significant digits.
std::string format_double(double value);

/// Flat JSON object, keys in insertion order. A null report is written as {}.
std::string format_json_report(const nlohmann::ordered_json& report);
void write_json_report(const nlohmann::ordered_json& report, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace shiftkern
