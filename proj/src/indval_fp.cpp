#include "mlv/indval.hpp"

namespace mlv {
template class inductive_valuation<fp_rft_field>;
}
