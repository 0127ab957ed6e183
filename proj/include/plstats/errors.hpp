#pragma once

#include <stdexcept>
#include <string>

namespace plstats {

//! File-system failure: missing or unreadable path.
class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Malformed input data: cells that do not parse, broken schemas.
class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! A hard resource limit was hit (e.g. the simplex cap).
class resource_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace plstats
