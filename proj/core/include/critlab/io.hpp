// io.hpp -- small file helpers: atomic writes and whole-file reads.
#pragma once

#include <string>

namespace critlab {

// Write via a temp file in the same directory, then rename into place.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace critlab
