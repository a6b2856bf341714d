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

#ifndef ALMOSTNET_POINT_FILE_HPP
#define ALMOSTNET_POINT_FILE_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "almostnet/radix.hpp"

namespace anet {

/// Text point file. Line 1 is the magic "ANET1" followed by key=value
/// fields (q, d, D, N, then the generator echo m, n, t, seed, the digit
/// encoding, and the tool version). Optional '#' comment lines carry
/// extra key=value annotations (verified deviation, retries,
/// perturbation). Every following line is one point: d digit strings
/// separated by single spaces, each exactly D digits.
struct PointFileHeader {
    uint32_t q = 0;
    uint32_t d = 0;
    uint32_t digit_count = 0;  // D
    uint64_t point_count = 0;  // N
    uint64_t m = 0;
    uint32_t n = 0;
    uint32_t t = 0;
    uint64_t seed = 0;
    std::string digits_mode;  // "chars" (q <= 10) or "csv"
    std::string version;
    std::vector<std::pair<std::string, std::string>> annotations;

    std::string annotation(const std::string& key) const;
};

class PointFileError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PointFileWriter {
  public:
    PointFileWriter(const std::string& path, const PointFileHeader& header);
    void write(const DigitPoint& pt);
    /// Flushes and verifies that exactly N points were written.
    void close();
    uint64_t written() const { return written_; }

  private:
    std::ofstream out_;
    PointFileHeader header_;
    uint64_t written_ = 0;
    std::string line_;
};

class PointFileReader {
  public:
    explicit PointFileReader(const std::string& path);
    const PointFileHeader& header() const { return header_; }
    /// Reads the next record; returns false cleanly at N records.
    bool next(DigitPoint& pt);
    /// Streams all remaining records and errors if fewer than N exist.
    template <typename Sink>
    void drain(Sink&& sink) {
        DigitPoint pt;
        while (next(pt)) sink(pt);
    }
    std::vector<DigitPoint> read_all();

  private:
    std::ifstream in_;
    PointFileHeader header_;
    uint64_t read_count_ = 0;
    std::string line_;
};

}  // namespace anet

#endif
