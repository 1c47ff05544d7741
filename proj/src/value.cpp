#include "contracheck/value.hpp"

namespace contracheck {

std::string ty_name(Ty t) {
  switch (t) {
    case Ty::Int: return "int";
    case Ty::Bool: return "bool";
    case Ty::Unit: return "unit";
  }
  return "?";
}

std::string Value::to_string() const {
  switch (v_.index()) {
    case 0: return as_int().str();
    case 1: return as_bool() ? "true" : "false";
    default: return "()";
  }
}

Int euclid_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncating
  Int r = a - q * b;
  if (r < 0) q += (b > 0) ? -1 : 1;
  return q;
}

Int euclid_mod(const Int& a, const Int& b) {
  Int r = a % b;  // truncating remainder, sign follows a
  if (r < 0) r += (b > 0) ? b : -b;
  return r;
}

}  // namespace contracheck
