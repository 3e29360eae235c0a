// Copyright 2026 The ldpix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpix/imageio.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ldpix {
namespace {

std::string lower_ext(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

struct FileCloser {
  std::FILE* fp = nullptr;
  ~FileCloser() {
    if (fp != nullptr) std::fclose(fp);
  }
};

// ---------------------------------------------------------------------------
// PNG

struct PngReadState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadState() {
    if (png != nullptr) png_destroy_read_struct(&png, &info, nullptr);
  }
};

struct PngWriteState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteState() {
    if (png != nullptr) png_destroy_write_struct(&png, &info);
  }
};

PixelImage read_png(std::FILE* fp, const std::string& path,
                    AlphaPolicy alpha) {
  PngReadState s;
  s.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                 nullptr);
  if (s.png == nullptr) throw std::runtime_error("libpng init failed");
  s.info = png_create_info_struct(s.png);
  if (s.info == nullptr) throw std::runtime_error("libpng init failed");
  if (setjmp(png_jmpbuf(s.png))) {
    throw std::runtime_error(path + ": corrupt or truncated PNG stream");
  }
  png_init_io(s.png, fp);
  png_read_info(s.png, s.info);

  if (png_get_bit_depth(s.png, s.info) > 8) {
    throw std::runtime_error(
        path + ": 16-bit PNG input is not supported; convert to 8-bit first");
  }

  // Normalize palette and sub-byte layouts to 8-bit channels.
  png_set_expand(s.png);
  png_set_packing(s.png);
  png_read_update_info(s.png, s.info);

  const int width = static_cast<int>(png_get_image_width(s.png, s.info));
  const int height = static_cast<int>(png_get_image_height(s.png, s.info));
  const int file_channels = png_get_channels(s.png, s.info);
  if (width <= 0 || height <= 0) {
    throw std::runtime_error(path + ": PNG reports empty dimensions");
  }
  const bool has_alpha = file_channels == 2 || file_channels == 4;
  if (has_alpha && alpha == AlphaPolicy::kReject) {
    throw std::runtime_error(
        path +
        ": image has an alpha channel; flatten it first or opt into "
        "stripping it");
  }
  if (file_channels < 1 || file_channels > 4) {
    throw std::runtime_error(path + ": unsupported PNG channel layout");
  }

  std::vector<std::uint8_t> raw(static_cast<std::size_t>(width) * height *
                                file_channels);
  std::vector<png_bytep> rows(height);
  for (int r = 0; r < height; ++r) {
    rows[r] = raw.data() + static_cast<std::size_t>(r) * width * file_channels;
  }
  png_read_image(s.png, rows.data());
  png_read_end(s.png, nullptr);

  const int out_channels = file_channels >= 3 ? 3 : 1;
  PixelImage img = PixelImage::create(
      width, height, out_channels,
      out_channels == 3 ? Colorspace::kRgb : Colorspace::kGray);
  const std::size_t pixels = static_cast<std::size_t>(width) * height;
  for (std::size_t i = 0; i < pixels; ++i) {
    for (int ch = 0; ch < out_channels; ++ch) {
      img.samples[i * out_channels + ch] = raw[i * file_channels + ch];
    }
  }
  return img;
}

void write_png(const PixelImage& img, const std::string& path) {
  FileCloser file{std::fopen(path.c_str(), "wb")};
  if (file.fp == nullptr) {
    throw std::runtime_error(path + ": cannot open for writing");
  }
  PngWriteState s;
  s.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                  nullptr);
  if (s.png == nullptr) throw std::runtime_error("libpng init failed");
  s.info = png_create_info_struct(s.png);
  if (s.info == nullptr) throw std::runtime_error("libpng init failed");
  if (setjmp(png_jmpbuf(s.png))) {
    throw std::runtime_error(path + ": PNG encode failed");
  }
  png_init_io(s.png, file.fp);
  png_set_IHDR(s.png, s.info, img.width, img.height, 8,
               img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(s.png, s.info);
  std::vector<png_const_bytep> rows(img.height);
  for (int r = 0; r < img.height; ++r) {
    rows[r] = img.samples.data() +
              static_cast<std::size_t>(r) * img.width * img.channels;
  }
  png_write_rows(s.png, const_cast<png_bytepp>(rows.data()),
                 static_cast<png_uint_32>(rows.size()));
  png_write_end(s.png, s.info);
}

// ---------------------------------------------------------------------------
// PPM / PGM (binary Netpbm)

int pnm_next_token(std::istream& in, const std::string& path) {
  // Netpbm headers allow arbitrary whitespace and '#' comments to EOL.
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF) throw std::runtime_error(path + ": truncated Netpbm header");
  int value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1 << 30) {
      throw std::runtime_error(path + ": unreasonable Netpbm header value");
    }
    c = in.get();
  }
  if (c == EOF || !std::isspace(c)) {
    throw std::runtime_error(path + ": malformed Netpbm header");
  }
  return value;
}

PixelImage read_pnm(std::istream& in, const std::string& path) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  const bool color = magic[1] == '6';
  const int channels = color ? 3 : 1;
  const int width = pnm_next_token(in, path);
  const int height = pnm_next_token(in, path);
  const int maxval = pnm_next_token(in, path);
  if (width <= 0 || height <= 0) {
    throw std::runtime_error(path + ": Netpbm image has empty dimensions");
  }
  if (maxval > 255) {
    throw std::runtime_error(
        path + ": 16-bit Netpbm input is not supported; convert to 8-bit first");
  }
  if (maxval <= 0) {
    throw std::runtime_error(path + ": invalid Netpbm maxval");
  }
  PixelImage img = PixelImage::create(
      width, height, channels, color ? Colorspace::kRgb : Colorspace::kGray);
  in.read(reinterpret_cast<char*>(img.samples.data()),
          static_cast<std::streamsize>(img.samples.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.samples.size())) {
    throw std::runtime_error(path + ": truncated Netpbm pixel data");
  }
  return img;
}

void write_pnm(const PixelImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << (img.channels == 3 ? "P6" : "P5") << "\n"
      << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.samples.data()),
            static_cast<std::streamsize>(img.samples.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace

PixelImage read_image(const std::string& path, AlphaPolicy alpha) {
  const std::string ext = lower_ext(path);
  if (ext == ".jpg" || ext == ".jpeg") {
    throw std::runtime_error(
        path +
        ": JPEG is a lossy format and would corrupt privatized bits; "
        "re-encode the input losslessly (e.g., PNG) first");
  }

  FileCloser file{std::fopen(path.c_str(), "rb")};
  if (file.fp == nullptr) {
    throw std::runtime_error(path + ": cannot open file");
  }
  unsigned char magic[8] = {0};
  const std::size_t got = std::fread(magic, 1, sizeof(magic), file.fp);
  std::rewind(file.fp);
  if (got < 2) {
    throw std::runtime_error(path + ": file too short to hold an image");
  }
  if (magic[0] == 0xFF && magic[1] == 0xD8) {
    throw std::runtime_error(
        path +
        ": JPEG is a lossy format and would corrupt privatized bits; "
        "re-encode the input losslessly (e.g., PNG) first");
  }
  if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) {
    return read_png(file.fp, path, alpha);
  }
  if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    return read_pnm(in, path);
  }
  throw std::runtime_error(
      path + ": unrecognized image format (supported: PNG, PPM, PGM)");
}

void write_image(const PixelImage& img, const std::string& path) {
  img.validate();
  const std::string ext = lower_ext(path);
  if (ext == ".png") {
    write_png(img, path);
  } else if (ext == ".ppm") {
    if (img.channels != 3) {
      throw std::invalid_argument(path + ": PPM requires a 3-channel image");
    }
    write_pnm(img, path);
  } else if (ext == ".pgm") {
    if (img.channels != 1) {
      throw std::invalid_argument(path + ": PGM requires a 1-channel image");
    }
    write_pnm(img, path);
  } else {
    throw std::invalid_argument(
        path + ": unsupported output extension (use .png, .ppm, or .pgm)");
  }
}

// ---------------------------------------------------------------------------
// Report documents

ReportDocument ReportDocument::from_report(const PrivacyReport& report,
                                           std::optional<std::uint64_t> seed) {
  ReportDocument doc;
  doc.version = 1;
  doc.epsilon_total = report.epsilon_total;
  const bool gray = report.channel_weights.size() == 1;
  const Colorspace cs = gray ? Colorspace::kGray : Colorspace::kYCbCr;
  for (std::size_t c = 0; c < report.channel_weights.size(); ++c) {
    doc.weights.emplace_back(channel_name(cs, static_cast<int>(c)),
                             report.channel_weights[c]);
  }
  for (const PlaneBudget& p : report.allocation) {
    doc.allocation.push_back(Entry{channel_name(cs, p.channel), p.significance,
                                   p.epsilon, p.p_keep});
  }
  doc.tv_bound = report.tv_bound;
  doc.advantage_bound = report.advantage_bound;
  doc.psnr_db = report.psnr_db;
  doc.prune = report.prune;
  doc.seed = seed;
  return doc;
}

std::string ReportDocument::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["epsilon_total"] = epsilon_total;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (const auto& [name, value] : weights) w[name] = value;
  j["weights"] = std::move(w);
  nlohmann::ordered_json planes = nlohmann::ordered_json::array();
  for (const Entry& e : allocation) {
    planes.push_back(nlohmann::ordered_json{{"channel", e.channel},
                                            {"bit", e.bit},
                                            {"epsilon", e.epsilon},
                                            {"p_keep", e.p_keep}});
  }
  j["allocation"] = std::move(planes);
  j["tv_bound"] = tv_bound;
  j["advantage_bound"] = advantage_bound;
  if (psnr_db.has_value()) {
    if (std::isinf(*psnr_db)) {
      j["psnr_db"] = "inf";
    } else {
      j["psnr_db"] = *psnr_db;
    }
  }
  j["prune"] = prune;
  if (seed.has_value()) j["seed"] = *seed;
  return j.dump(2) + "\n";
}

namespace {

void require_keys(const nlohmann::ordered_json& j,
                  const std::vector<std::string>& known,
                  const std::vector<std::string>& required,
                  const std::string& where) {
  for (const auto& item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw std::runtime_error("report: unknown key \"" + item.key() +
                               "\" in " + where);
    }
  }
  for (const std::string& key : required) {
    if (!j.contains(key)) {
      throw std::runtime_error("report: missing key \"" + key + "\" in " +
                               where);
    }
  }
}

}  // namespace

ReportDocument ReportDocument::from_json(const std::string& text) {
  // ordered_json keeps document order so a parse/serialize cycle is faithful.
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report: invalid JSON: ") + e.what());
  }
  try {
    require_keys(j,
                 {"version", "epsilon_total", "weights", "allocation",
                  "tv_bound", "advantage_bound", "psnr_db", "prune", "seed"},
                 {"version", "epsilon_total", "weights", "allocation",
                  "tv_bound", "advantage_bound", "prune"},
                 "document");
    ReportDocument doc;
    doc.version = j.at("version").get<int>();
    if (doc.version != 1) {
      throw std::runtime_error("report: unsupported version " +
                               std::to_string(doc.version));
    }
    doc.epsilon_total = j.at("epsilon_total").get<double>();
    for (const auto& item : j.at("weights").items()) {
      doc.weights.emplace_back(item.key(), item.value().get<double>());
    }
    for (const auto& entry : j.at("allocation")) {
      require_keys(entry, {"channel", "bit", "epsilon", "p_keep"},
                   {"channel", "bit", "epsilon", "p_keep"},
                   "allocation entry");
      Entry e;
      e.channel = entry.at("channel").get<std::string>();
      e.bit = entry.at("bit").get<int>();
      e.epsilon = entry.at("epsilon").get<double>();
      e.p_keep = entry.at("p_keep").get<double>();
      if (e.bit < 1 || e.bit > 8) {
        throw std::runtime_error("report: allocation bit index out of range");
      }
      doc.allocation.push_back(std::move(e));
    }
    doc.tv_bound = j.at("tv_bound").get<double>();
    doc.advantage_bound = j.at("advantage_bound").get<double>();
    if (j.contains("psnr_db")) {
      if (j.at("psnr_db").is_string()) {
        if (j.at("psnr_db").get<std::string>() != "inf") {
          throw std::runtime_error("report: psnr_db must be a number or \"inf\"");
        }
        doc.psnr_db = std::numeric_limits<double>::infinity();
      } else {
        doc.psnr_db = j.at("psnr_db").get<double>();
      }
    }
    doc.prune = j.at("prune").get<bool>();
    if (j.contains("seed")) {
      doc.seed = j.at("seed").get<std::uint64_t>();
    }

    double sum = 0.0;
    for (const Entry& e : doc.allocation) sum += e.epsilon;
    if (std::abs(sum - doc.epsilon_total) > 1e-9) {
      std::ostringstream msg;
      msg << "report: allocation sums to " << sum
          << " but epsilon_total is " << doc.epsilon_total;
      throw std::runtime_error(msg.str());
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("report: schema violation: ") +
                             e.what());
  }
}

}  // namespace ldpix
