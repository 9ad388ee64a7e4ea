#ifndef HCOUPLE_ORDERING_HPP
#define HCOUPLE_ORDERING_HPP

namespace hcouple {

enum class Ordering { LT = -1, EQ = 0, GT = 1 };

inline Ordering orderingOfInt(int sign) {
  return sign < 0 ? Ordering::LT : sign > 0 ? Ordering::GT : Ordering::EQ;
}

inline Ordering flip(Ordering o) {
  return o == Ordering::LT ? Ordering::GT : o == Ordering::GT ? Ordering::LT : Ordering::EQ;
}

} // namespace hcouple

#endif
