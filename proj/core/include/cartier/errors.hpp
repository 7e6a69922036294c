#pragma once
#include <stdexcept>
#include <string>

namespace cartier {

struct CartierError : std::runtime_error {
  std::string kind;
  CartierError(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

#define CARTIER_ERROR_KIND(Name)                                      \
  struct Name : CartierError {                                        \
    explicit Name(const std::string& msg) : CartierError(#Name, msg) {} \
  }

CARTIER_ERROR_KIND(NonPrime);
CARTIER_ERROR_KIND(MismatchedTruncation);
CARTIER_ERROR_KIND(BaseHasPTorsion);
CARTIER_ERROR_KIND(TruncationUnderflow);
CARTIER_ERROR_KIND(DegreeOverflow);
CARTIER_ERROR_KIND(WindowOverflow);
CARTIER_ERROR_KIND(NotInHeart);
CARTIER_ERROR_KIND(RelationViolation);
CARTIER_ERROR_KIND(NoStabilization);
CARTIER_ERROR_KIND(TruncationTooSmall);
CARTIER_ERROR_KIND(NonIntegral);
CARTIER_ERROR_KIND(SchemaViolation);

#undef CARTIER_ERROR_KIND

}  // namespace cartier
