#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace surj {

using Index = std::int64_t;

/// An opaque atom label. Product tags are spelled "<base>·<copy>".
struct Tag {
  std::string name;

  Tag() = default;
  Tag(std::string n) : name(std::move(n)) {}
  Tag(const char *n) : name(n) {}

  auto operator<=>(const Tag &) const = default;
  bool operator==(const Tag &) const = default;
};

struct Element {
  Tag tag;
  Index index = 0;

  auto operator<=>(const Element &) const = default;
  bool operator==(const Element &) const = default;
};

/// {(tag, n) : n >= low, n ≡ residue (mod modulus)}. modulus == 0 means the
/// single point (tag, low).
struct Progression {
  Tag tag;
  Index residue = 0;
  Index modulus = 1;
  Index low = 0;

  bool operator==(const Progression &) const = default;
};

std::ostream &operator<<(std::ostream &os, const Tag &t);
std::ostream &operator<<(std::ostream &os, const Element &e);

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad input: violated preconditions of an operation.
class InputError : public Error {
public:
  using Error::Error;
};

class ConstructionError : public Error {
public:
  using Error::Error;
};

#define SURJ_ERROR(Name, Base)                                                 \
  class Name : public Base {                                                   \
  public:                                                                      \
    using Base::Base;                                                          \
  };

SURJ_ERROR(ConflictingUnion, InputError)
SURJ_ERROR(InvalidAction, InputError)
SURJ_ERROR(TagCollision, InputError)
SURJ_ERROR(DisjointnessViolation, InputError)
SURJ_ERROR(NotPartialSurjection, InputError)
SURJ_ERROR(NotSurjectionPair, InputError)
SURJ_ERROR(InvalidFamily, InputError)
SURJ_ERROR(InvalidChain, InputError)
SURJ_ERROR(ExpansivityRequired, InputError)
SURJ_ERROR(NotDescending, InputError)
SURJ_ERROR(SizeGuard, InputError)
SURJ_ERROR(Unsupported, ConstructionError)
SURJ_ERROR(RepresentationLimit, ConstructionError)

#undef SURJ_ERROR

} // namespace surj
