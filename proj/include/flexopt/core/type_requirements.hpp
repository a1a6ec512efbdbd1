#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <typeinfo>
#include <vector>

namespace flexopt {

enum class ElementTypeRequirement
{
  FloatingPoint,
  SameInternalTypes,
  DenseFloatingPoint
};

/// Describes the element type of a coordinate container for diagnostics.
struct TypeDescriptor
{
  std::string name;
  bool is_floating_point = false;
  bool is_dense = true;
};

template<typename MatType>
TypeDescriptor describe_element_type()
{
  using E = typename MatType::elem_type;
  TypeDescriptor d;
  d.is_floating_point = std::is_floating_point_v<E>;
  d.is_dense = true;
  if constexpr (std::is_same_v<E, float>)
    d.name = "float";
  else if constexpr (std::is_same_v<E, double>)
    d.name = "double";
  else if constexpr (std::is_same_v<E, int>)
    d.name = "int";
  else if constexpr (std::is_same_v<E, long>)
    d.name = "long";
  else
    d.name = typeid(E).name();
  return d;
}

struct TypeCheckResult
{
  bool ok = true;
  std::string message;

  explicit operator bool() const { return ok; }
};

/// Escape hatch: when type checks are disabled, requirement failures are
/// reported as warnings on stderr instead of errors.  Controlled
/// programmatically or via the FLEXOPT_DISABLE_TYPE_CHECKS environment
/// variable.
inline bool& type_checks_disabled_flag()
{
  static bool disabled = (std::getenv("FLEXOPT_DISABLE_TYPE_CHECKS") != nullptr);
  return disabled;
}

inline void set_type_checks_disabled(bool disabled)
{ type_checks_disabled_flag() = disabled; }

inline bool type_checks_disabled()
{ return type_checks_disabled_flag(); }

/// Pure requirement check; returns success or a diagnostic naming the
/// offending types.
inline TypeCheckResult require(ElementTypeRequirement req,
                               const std::vector<TypeDescriptor>& types)
{
  std::ostringstream msg;
  switch (req)
  {
    case ElementTypeRequirement::FloatingPoint:
    case ElementTypeRequirement::DenseFloatingPoint:
      for (const TypeDescriptor& t : types)
      {
        if (!t.is_floating_point)
        {
          msg << "The element type of the given coordinates must be either "
                 "float or double, but it is '" << t.name << "'.";
          return { false, msg.str() };
        }
        if (req == ElementTypeRequirement::DenseFloatingPoint && !t.is_dense)
        {
          msg << "The given coordinate type with element type '" << t.name
              << "' must use dense storage.";
          return { false, msg.str() };
        }
      }
      return {};

    case ElementTypeRequirement::SameInternalTypes:
      for (std::size_t i = 1; i < types.size(); ++i)
      {
        if (types[i].name != types[0].name)
        {
          msg << "The internal element types of the given coordinate and "
                 "gradient types must be identical, or it is not known to "
                 "work; got '" << types[0].name << "' and '" << types[i].name
              << "'.";
          return { false, msg.str() };
        }
      }
      return {};
  }
  return {};
}

class TypeRequirementError : public std::runtime_error
{
 public:
  explicit TypeRequirementError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Enforce a requirement result: throw on failure, or warn when type checks
/// are disabled.
inline void enforce(const TypeCheckResult& result)
{
  if (result.ok)
    return;
  if (type_checks_disabled())
  {
    std::cerr << "warning: " << result.message << "\n";
    return;
  }
  throw TypeRequirementError(result.message);
}

template<typename MatType>
void require_floating_point()
{
  enforce(require(ElementTypeRequirement::FloatingPoint,
                  { describe_element_type<MatType>() }));
}

template<typename MatType, typename GradType>
void require_same_internal_types()
{
  enforce(require(ElementTypeRequirement::SameInternalTypes,
                  { describe_element_type<MatType>(),
                    describe_element_type<GradType>() }));
}

template<typename MatType>
void require_dense_floating_point()
{
  enforce(require(ElementTypeRequirement::DenseFloatingPoint,
                  { describe_element_type<MatType>() }));
}

}  // namespace flexopt
