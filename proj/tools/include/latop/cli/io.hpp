#pragma once

// File formats: plain PBM images and tab-separated manifests.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latop/learn.hpp"
#include "latop/morphology.hpp"

namespace latop::cli {

/// Plain PBM ("P1"): magic, width, height, then width*height 0/1 digits.
/// Pixel digits may run together. A '#' starts a comment that runs to the end
/// of the line. 1 is foreground.
BinaryImage parse_pbm(std::string_view text, Boundary boundary = Boundary::ZeroPad);
BinaryImage read_pbm(const std::filesystem::path& path, Boundary boundary = Boundary::ZeroPad);
std::string format_pbm(const BinaryImage& image);
void write_pbm(const BinaryImage& image, const std::filesystem::path& path);

struct Manifest {
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> pairs;
};

/// One "input<TAB>target" pair per line; relative paths are resolved against
/// `base`. Blank lines and '#' comments are skipped.
Manifest parse_manifest(std::string_view text, const std::filesystem::path& base = {});
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const Manifest& m, const std::filesystem::path& path);

/// Reads every referenced image with `boundary` attached.
Dataset load_dataset(const Manifest& m, Boundary boundary);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Reads a parameter file. A file that starts with "window:" is a bare table
/// and becomes a one-layer seq-tables point.
ParamPoint read_param_file(const std::filesystem::path& path, std::size_t cap = kDefaultWindowCap);
ParamPoint parse_param_or_table(std::string_view text, std::size_t cap = kDefaultWindowCap);

}  // namespace latop::cli
