#include "lenia/board_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lenia {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail("cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) fail("short write to " + path);
}

}  // namespace

void write_pgm_bytes(int width, int height, const std::vector<unsigned char>& pixels,
                     const std::string& path) {
  if (pixels.size() != static_cast<std::size_t>(width) * height) {
    fail("write_pgm: pixel count does not match dimensions");
  }
  std::string data = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  data.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
  write_file(path, data);
}

void write_pgm(const Board& board, const std::string& path) {
  std::vector<unsigned char> pixels(board.cells.size());
  for (std::size_t k = 0; k < board.cells.size(); ++k) {
    pixels[k] = static_cast<unsigned char>(std::lround(board.cells[k] * 255.0));
  }
  write_pgm_bytes(board.width, board.height, pixels, path);
}

Board read_pgm(const std::string& path) {
  const std::string data = read_file(path);
  std::istringstream in(data);
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (magic != "P5") fail(path + ": not a P5 PGM file");
  if (width <= 0 || height <= 0) fail(path + ": bad PGM dimensions");
  if (maxval != 255) fail(path + ": expected maxval 255");
  in.get();  // the single whitespace byte before the payload
  const std::size_t offset = static_cast<std::size_t>(in.tellg());
  const std::size_t expected = static_cast<std::size_t>(width) * height;
  if (data.size() - offset < expected) fail(path + ": truncated PGM payload");

  Board board(width, height);
  for (std::size_t k = 0; k < expected; ++k) {
    board.cells[k] = static_cast<unsigned char>(data[offset + k]) / 255.0;
  }
  return board;
}

std::string board_to_text(const Board& board) {
  std::string out;
  out.reserve(board.cells.size() * 9);
  char buf[32];
  for (int y = 0; y < board.height; ++y) {
    for (int x = 0; x < board.width; ++x) {
      std::snprintf(buf, sizeof(buf), "%.6f", board.at(y, x));
      if (x > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Board board_from_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v = 0.0;
    while (ls >> v) {
      if (!(v >= 0.0 && v <= 1.0)) {
        fail(source + ":" + std::to_string(line_no) + ": value " + std::to_string(v) +
             " outside [0, 1]");
      }
      row.push_back(v);
    }
    if (!ls.eof()) {
      fail(source + ":" + std::to_string(line_no) + ": malformed number");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(source + ":" + std::to_string(line_no) + ": expected " +
           std::to_string(rows.front().size()) + " values, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(source + ": empty board file");

  Board board(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (int y = 0; y < board.height; ++y) {
    for (int x = 0; x < board.width; ++x) {
      board.at(y, x) = rows[y][x];
    }
  }
  return board;
}

void write_board_text(const Board& board, const std::string& path) {
  write_file(path, board_to_text(board));
}

Board read_board_text(const std::string& path) {
  return board_from_text(read_file(path), path);
}

}  // namespace lenia
