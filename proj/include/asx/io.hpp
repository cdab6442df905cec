#ifndef ASX_IO_HPP
#define ASX_IO_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "asx/common.hpp"
#include "asx/layer.hpp"
#include "asx/scheme.hpp"

// Plain-text formats: whitespace-separated decimal integers, '#' comments
// to end of line, UNIX or Windows newlines accepted, output always UNIX.

namespace asx {

namespace io_detail {

class Tokenizer {
public:
    explicit Tokenizer(const std::string& text) : text_(text) {}

    /// Next integer token; reports line/column on failure.
    long long next_int(const char* what) {
        skip();
        if (pos_ >= text_.size())
            fail(Errc::ParseError, std::string("unexpected end of input, expected ") + what +
                                       " at line " + std::to_string(line_));
        std::size_t start = pos_;
        if (text_[pos_] == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start || (text_[pos_ - 1] == '-'))
            fail(Errc::ParseError, std::string("expected ") + what + " at line " +
                                       std::to_string(line_) + ", column " +
                                       std::to_string(col(start)));
        return std::stoll(text_.substr(start, pos_ - start));
    }

    void expect_word(const std::string& word) {
        skip();
        if (text_.compare(pos_, word.size(), word) != 0)
            fail(Errc::ParseError, "expected '" + word + "' at line " + std::to_string(line_) +
                                       ", column " + std::to_string(col(pos_)));
        pos_ += word.size();
    }

    bool at_end() {
        skip();
        return pos_ >= text_.size();
    }

    int line() const { return line_; }

private:
    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++line_;
                line_start_ = ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    int col(std::size_t at) const { return static_cast<int>(at - line_start_) + 1; }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
    std::size_t col_base_ = 0;
};

inline int checked_int(long long v, long long lo, long long hi, const char* what, int line) {
    if (v < lo || v > hi)
        fail(Errc::ParseError, std::string(what) + " " + std::to_string(v) +
                                   " out of range at line " + std::to_string(line));
    return static_cast<int>(v);
}

}  // namespace io_detail

/// SchemeFile: line 1 "d s"; then d rows of d colors. Validates the scheme.
inline Scheme parse_scheme(const std::string& text) {
    io_detail::Tokenizer tok(text);
    int d = io_detail::checked_int(tok.next_int("order"), 1, 1 << 20, "order", tok.line());
    int s = io_detail::checked_int(tok.next_int("cell count"), 1, d * d, "cell count", tok.line());
    std::vector<Color> colors;
    colors.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d * d; ++i)
        colors.push_back(
            io_detail::checked_int(tok.next_int("color"), 0, s - 1, "color", tok.line()));
    Scheme scheme = validate_scheme(colors, d);
    if (scheme.cell_count != s)
        fail(Errc::ParseError, "header declares " + std::to_string(s) + " cells but matrix uses " +
                                   std::to_string(scheme.cell_count));
    return scheme;
}

inline std::string serialize_scheme(const Scheme& scheme) {
    std::ostringstream out;
    out << scheme.order << ' ' << scheme.cell_count << '\n';
    for (int x = 0; x < scheme.order; ++x) {
        for (int y = 0; y < scheme.order; ++y) {
            if (y) out << ' ';
            out << scheme.color(x, y);
        }
        out << '\n';
    }
    return out.str();
}

/// GeneratorFile: line 1 "d g"; then g rows of d 0-based images.
inline PermGroup parse_generators(const std::string& text) {
    io_detail::Tokenizer tok(text);
    int d = io_detail::checked_int(tok.next_int("degree"), 1, 1 << 20, "degree", tok.line());
    int g = io_detail::checked_int(tok.next_int("generator count"), 0, 1 << 20,
                                   "generator count", tok.line());
    PermGroup group;
    group.degree = d;
    for (int i = 0; i < g; ++i) {
        std::vector<int> images(d);
        std::vector<char> seen(d, 0);
        for (int j = 0; j < d; ++j) {
            images[j] =
                io_detail::checked_int(tok.next_int("image"), 0, d - 1, "image", tok.line());
            if (seen[images[j]])
                fail(Errc::NotBijection,
                     "repeated image " + std::to_string(images[j]) + " in generator " +
                         std::to_string(i));
            seen[images[j]] = 1;
        }
        group.generators.push_back(std::move(images));
    }
    return group;
}

inline std::string serialize_generators(const PermGroup& group) {
    std::ostringstream out;
    out << group.degree << ' ' << group.generators.size() << '\n';
    for (const auto& g : group.generators) {
        for (int j = 0; j < group.degree; ++j) {
            if (j) out << ' ';
            out << g[j];
        }
        out << '\n';
    }
    return out.str();
}

/// ExtensionFile: line 1 "d t"; then for heights 0..t a block "cells k"
/// followed by d^(h+2) colors in flat mixed-radix order.
inline std::string serialize_extension(const Extension& ext) {
    std::ostringstream out;
    const int d = ext.base.order;
    out << d << ' ' << ext.height() << '\n';
    for (int h = 0; h <= ext.height(); ++h) {
        out << "cells " << ext.cells_at(h) << '\n';
        const std::vector<Color>& colors =
            h == 0 ? ext.base.colors : ext.layers[h - 1].colors;
        const std::uint64_t per_line = d;
        for (std::uint64_t i = 0; i < colors.size(); ++i) {
            out << colors[i];
            out << (((i + 1) % per_line == 0) ? '\n' : ' ');
        }
    }
    return out.str();
}

inline Extension parse_extension(const std::string& text) {
    io_detail::Tokenizer tok(text);
    int d = io_detail::checked_int(tok.next_int("order"), 1, 1 << 20, "order", tok.line());
    int t = io_detail::checked_int(tok.next_int("height"), 0, 64, "height", tok.line());

    Extension ext;
    for (int h = 0; h <= t; ++h) {
        tok.expect_word("cells");
        long long k = tok.next_int("cell count");
        std::uint64_t count = checked_pow(d, h + 2);
        std::vector<Color> colors(count);
        for (std::uint64_t i = 0; i < count; ++i)
            colors[i] = io_detail::checked_int(
                tok.next_int("color"), 0, static_cast<long long>(k) - 1, "color", tok.line());
        if (h == 0) {
            ext.base = validate_scheme(colors, d);
            if (ext.base.cell_count != static_cast<int>(k))
                fail(Errc::ParseError, "base block cell count mismatch");
        } else {
            Layer layer;
            layer.order = d;
            layer.height = h;
            layer.cell_count = static_cast<int>(k);
            layer.colors = std::move(colors);
            std::vector<char> seen(layer.cell_count, 0);
            for (Color c : layer.colors) seen[c] = 1;
            if (std::find(seen.begin(), seen.end(), 0) != seen.end())
                fail(Errc::ShapeMismatch,
                     "layer at height " + std::to_string(h) + " has empty cells");
            ext.layers.push_back(std::move(layer));
        }
    }
    if (!tok.at_end()) fail(Errc::ParseError, "trailing data after extension blocks");
    return ext;
}

struct CatalogEntry {
    std::string name;
    Scheme scheme;
};

struct CatalogFailure {
    std::string name;
    std::string reason;
};

struct CatalogReport {
    std::vector<CatalogEntry> schemes;
    std::vector<CatalogFailure> failures;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::ParseError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Parses every regular file in a directory as a scheme matrix. With
/// one_based, all colors are shifted down by one first (for catalogs that
/// label the identity relation 1). Per-file failures are collected.
inline CatalogReport ingest_catalog(const std::filesystem::path& dir, bool one_based = false) {
    CatalogReport report;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        try {
            std::string text = read_file(path);
            Scheme scheme;
            if (one_based) {
                io_detail::Tokenizer tok(text);
                int d = io_detail::checked_int(tok.next_int("order"), 1, 1 << 20, "order",
                                               tok.line());
                int s = io_detail::checked_int(tok.next_int("cell count"), 1, d * d,
                                               "cell count", tok.line());
                std::vector<Color> colors;
                colors.reserve(static_cast<std::size_t>(d) * d);
                for (int i = 0; i < d * d; ++i)
                    colors.push_back(io_detail::checked_int(tok.next_int("color"), 1, s,
                                                            "color", tok.line()) - 1);
                scheme = validate_scheme(colors, d);
            } else {
                scheme = parse_scheme(text);
            }
            report.schemes.push_back({path.filename().string(), std::move(scheme)});
        } catch (const Error& e) {
            report.failures.push_back({path.filename().string(), e.what()});
        }
    }
    return report;
}

}  // namespace asx

#endif
