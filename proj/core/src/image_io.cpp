#include "shiftkern/image_io.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace shiftkern {

namespace {

class HeaderReader {
public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long next_integer(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw IoError(IoErrc::UnexpectedEnd, "unexpected end of data");
    long value = 0;
    const char* begin = bytes_.data() + pos_;
    const char* end = bytes_.data() + bytes_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin)
      throw IoError(IoErrc::MalformedHeader, std::string("malformed PGM header: bad ") + what);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoErrc::CannotOpen, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

ImageBuffer parse_pgm(std::string_view bytes) {
  if (bytes.size() < 2) throw IoError(IoErrc::UnexpectedEnd, "unexpected end of data");
  const std::string_view magic = bytes.substr(0, 2);
  const bool ascii = magic == "P2";
  if (!ascii && magic != "P5") throw IoError(IoErrc::MalformedHeader, "malformed PGM header: bad magic");

  HeaderReader reader(bytes);
  reader.advance(2);
  const long width = reader.next_integer("width");
  const long height = reader.next_integer("height");
  const long maxval = reader.next_integer("maxval");
  if (width <= 0 || height <= 0 || width > (1L << 20) || height > (1L << 20))
    throw IoError(IoErrc::MalformedHeader, "malformed PGM header: bad dimensions");
  if (maxval == 0) throw IoError(IoErrc::ZeroMaxval, "PGM maxval is zero");
  if (maxval < 0 || maxval > 65535) throw IoError(IoErrc::MalformedHeader, "malformed PGM header: bad maxval");

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> samples(count);
  const double to_unit = 255.0 / static_cast<double>(maxval);

  auto store = [&](std::size_t i, long v) {
    if (v < 0 || v > maxval) throw IoError(IoErrc::SampleOutOfRange, "PGM sample exceeds maxval");
    samples[i] = static_cast<double>(v) * to_unit;
  };

  if (ascii) {
    for (std::size_t i = 0; i < count; ++i) store(i, reader.next_integer("sample"));
  } else {
    // Exactly one whitespace byte separates maxval from the raster.
    if (reader.pos() >= bytes.size()) throw IoError(IoErrc::UnexpectedEnd, "unexpected end of data");
    if (!std::isspace(static_cast<unsigned char>(bytes[reader.pos()])))
      throw IoError(IoErrc::MalformedHeader, "malformed PGM header: missing separator");
    reader.advance(1);
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t start = reader.pos();
    if (bytes.size() - start < count * bytes_per_sample)
      throw IoError(IoErrc::UnexpectedEnd, "unexpected end of data");
    const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data() + start);
    for (std::size_t i = 0; i < count; ++i) {
      const long v = bytes_per_sample == 2 ? (long(raw[2 * i]) << 8) | long(raw[2 * i + 1]) : long(raw[i]);
      store(i, v);
    }
  }
  return ImageBuffer(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

ImageBuffer read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

std::string encode_pgm(const ImageBuffer& image, int maxval) {
  if (maxval <= 0 || maxval > 65535) throw std::invalid_argument("PGM maxval must lie in [1, 65535]");
  std::string out = "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n" +
                    std::to_string(maxval) + "\n";
  const double from_unit = maxval == 255 ? 1.0 : static_cast<double>(maxval) / 255.0;
  const bool wide = maxval > 255;
  out.reserve(out.size() + image.size() * (wide ? 2 : 1));
  for (double v : image.data()) {
    const double scaled = std::clamp(v * from_unit, 0.0, static_cast<double>(maxval));
    const auto q = static_cast<unsigned>(std::nearbyint(scaled));  // default rounding: half-to-even
    if (wide) out.push_back(static_cast<char>((q >> 8) & 0xFF));
    out.push_back(static_cast<char>(q & 0xFF));
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(IoErrc::CannotWrite, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError(IoErrc::CannotWrite, "cannot write " + path.string());
}

void write_pgm(const ImageBuffer& image, const std::filesystem::path& path, int maxval) {
  write_text_file(path, encode_pgm(image, maxval));
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string format_csv(const CsvMatrix& matrix) {
  std::string out;
  for (std::size_t i = 0; i < matrix.header.size(); ++i) {
    if (i) out += ',';
    out += matrix.header[i];
  }
  out += '\n';
  for (const auto& row : matrix.rows) {
    if (!matrix.header.empty() && row.size() != matrix.header.size())
      throw std::invalid_argument("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv_matrix(const CsvMatrix& matrix, const std::filesystem::path& path) {
  write_text_file(path, format_csv(matrix));
}

std::string format_json_report(const nlohmann::ordered_json& report) {
  if (report.is_null()) return "{}\n";
  return report.dump(2) + "\n";
}

void write_json_report(const nlohmann::ordered_json& report, const std::filesystem::path& path) {
  write_text_file(path, format_json_report(report));
}

}  // namespace shiftkern
