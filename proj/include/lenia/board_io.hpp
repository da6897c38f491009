#pragma once

#include <string>
#include <vector>

#include "lenia/board.hpp"

namespace lenia {

// 8-bit binary PGM (P5), pixel = round(cell * 255).
void write_pgm(const Board& board, const std::string& path);
void write_pgm_bytes(int width, int height, const std::vector<unsigned char>& pixels,
                     const std::string& path);
// Reads a P5 file written by write_pgm; cells come back as pixel / 255.
Board read_pgm(const std::string& path);

// Text frame format: one row per line, space-separated 6-decimal
// fixed-point values. Exact round-trip for 6-decimal data.
std::string board_to_text(const Board& board);
Board board_from_text(const std::string& text, const std::string& source = "<string>");
void write_board_text(const Board& board, const std::string& path);
Board read_board_text(const std::string& path);

}  // namespace lenia
