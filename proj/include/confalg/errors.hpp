#pragma once

#include <stdexcept>
#include <string>

namespace confalg {

// Base of every library error. kind() is the stable tag written into CLI
// error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CONFALG_DECLARE_ERROR(Name, tag)                                  \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(tag, what) {}         \
  };

CONFALG_DECLARE_ERROR(DomainError, "domain")
CONFALG_DECLARE_ERROR(RadiusError, "radius")
CONFALG_DECLARE_ERROR(DegenerateError, "degenerate")
CONFALG_DECLARE_ERROR(ContainmentError, "containment")
CONFALG_DECLARE_ERROR(DisjointnessError, "disjointness")
CONFALG_DECLARE_ERROR(IndexError, "index")
CONFALG_DECLARE_ERROR(SingularError, "singular")
CONFALG_DECLARE_ERROR(RegionError, "region")
CONFALG_DECLARE_ERROR(TruncationError, "truncation")
CONFALG_DECLARE_ERROR(DimensionError, "dimension")
CONFALG_DECLARE_ERROR(UnsupportedError, "unsupported")
CONFALG_DECLARE_ERROR(SeparationError, "separation")
CONFALG_DECLARE_ERROR(ZeroMeanError, "zero_mean")
CONFALG_DECLARE_ERROR(ToleranceError, "tolerance")
CONFALG_DECLARE_ERROR(ParseError, "parse")

#undef CONFALG_DECLARE_ERROR

}  // namespace confalg
