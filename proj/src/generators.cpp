#include "recbases/exceptional.hpp"
#include "recbases/higherdeg.hpp"
#include "recbases/real.hpp"

namespace recbases::detail {

void register_builtin_generators() {
  register_exceptional_generator();
  register_gamma_enclosure();
}

}  // namespace recbases::detail
