/*
   Copyright 2026 The almostnet authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "almostnet/point_file.hpp"

#include <charconv>
#include <sstream>

namespace anet {
namespace {

constexpr const char* kMagic = "ANET1";

uint64_t parse_u64(const std::string& text, const char* what) {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw PointFileError(std::string("bad integer for header field ") + what);
    return value;
}

}  // namespace

std::string PointFileHeader::annotation(const std::string& key) const {
    for (const auto& [k, v] : annotations)
        if (k == key) return v;
    return {};
}

PointFileWriter::PointFileWriter(const std::string& path, const PointFileHeader& header)
    : out_(path, std::ios::binary), header_(header) {
    if (!out_) throw PointFileError("cannot open " + path + " for writing");
    out_ << kMagic << " q=" << header.q << " d=" << header.d << " D=" << header.digit_count
         << " N=" << header.point_count << " m=" << header.m << " n=" << header.n
         << " t=" << header.t << " seed=" << header.seed << " digits=" << header.digits_mode
         << " version=" << header.version << "\n";
    for (const auto& [key, value] : header.annotations) out_ << "# " << key << "=" << value << "\n";
}

void PointFileWriter::write(const DigitPoint& pt) {
    if (pt.q != header_.q || pt.dimension != header_.d || pt.digits_per_coord != header_.digit_count)
        throw PointFileError("point shape does not match the file header");
    line_.clear();
    for (uint32_t i = 0; i < pt.dimension; ++i) {
        if (i) line_.push_back(' ');
        auto c = pt.coord(i);
        if (header_.q <= 10) {
            for (uint8_t digit : c) line_.push_back(static_cast<char>('0' + digit));
        } else {
            for (size_t j = 0; j < c.size(); ++j) {
                if (j) line_.push_back(',');
                line_ += std::to_string(c[j]);
            }
        }
    }
    line_.push_back('\n');
    out_ << line_;
    ++written_;
}

void PointFileWriter::close() {
    if (written_ != header_.point_count)
        throw PointFileError("wrote " + std::to_string(written_) + " points, header promised " +
                             std::to_string(header_.point_count));
    out_.flush();
    if (!out_) throw PointFileError("write failure while closing the point file");
    out_.close();
}

PointFileReader::PointFileReader(const std::string& path) : in_(path, std::ios::binary) {
    if (!in_) throw PointFileError("cannot open " + path);
    if (!std::getline(in_, line_)) throw PointFileError("empty point file");
    std::istringstream head(line_);
    std::string token;
    head >> token;
    if (token != kMagic) throw PointFileError("bad magic; not a point file");
    while (head >> token) {
        size_t eq = token.find('=');
        if (eq == std::string::npos) throw PointFileError("malformed header token: " + token);
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        if (key == "q") header_.q = static_cast<uint32_t>(parse_u64(value, "q"));
        else if (key == "d") header_.d = static_cast<uint32_t>(parse_u64(value, "d"));
        else if (key == "D") header_.digit_count = static_cast<uint32_t>(parse_u64(value, "D"));
        else if (key == "N") header_.point_count = parse_u64(value, "N");
        else if (key == "m") header_.m = parse_u64(value, "m");
        else if (key == "n") header_.n = static_cast<uint32_t>(parse_u64(value, "n"));
        else if (key == "t") header_.t = static_cast<uint32_t>(parse_u64(value, "t"));
        else if (key == "seed") header_.seed = parse_u64(value, "seed");
        else if (key == "digits") header_.digits_mode = value;
        else if (key == "version") header_.version = value;
        else throw PointFileError("unknown header field: " + key);
    }
    if (header_.q == 0 || header_.d == 0) throw PointFileError("header is missing q or d");
    require_prime_base(header_.q);
    // annotation lines
    while (in_.peek() == '#') {
        std::getline(in_, line_);
        std::istringstream note(line_.substr(1));
        while (note >> token) {
            size_t eq = token.find('=');
            if (eq != std::string::npos)
                header_.annotations.emplace_back(token.substr(0, eq), token.substr(eq + 1));
        }
    }
}

bool PointFileReader::next(DigitPoint& pt) {
    if (read_count_ == header_.point_count) return false;
    if (!std::getline(in_, line_))
        throw PointFileError("file ends after " + std::to_string(read_count_) +
                             " of " + std::to_string(header_.point_count) + " points");
    pt.reset(header_.q, header_.d, header_.digit_count);
    size_t pos = 0;
    for (uint32_t i = 0; i < header_.d; ++i) {
        size_t end = line_.find(' ', pos);
        std::string field = line_.substr(pos, end == std::string::npos ? end : end - pos);
        DigitString s = DigitString::parse(header_.q, field);
        if (s.digits.size() != header_.digit_count)
            throw PointFileError("record " + std::to_string(read_count_) + " coordinate " +
                                 std::to_string(i) + " has " + std::to_string(s.digits.size()) +
                                 " digits, header promised " + std::to_string(header_.digit_count));
        std::copy(s.digits.begin(), s.digits.end(), pt.coord(i).begin());
        if (end == std::string::npos) {
            if (i + 1 != header_.d)
                throw PointFileError("record " + std::to_string(read_count_) + " has too few fields");
            pos = line_.size();
        } else {
            pos = end + 1;
        }
    }
    if (pos < line_.size())
        throw PointFileError("record " + std::to_string(read_count_) + " has trailing data");
    ++read_count_;
    return true;
}

std::vector<DigitPoint> PointFileReader::read_all() {
    std::vector<DigitPoint> out;
    out.reserve(header_.point_count);
    DigitPoint pt;
    while (next(pt)) out.push_back(pt);
    return out;
}

}  // namespace anet
