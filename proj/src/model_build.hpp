#pragma once

#include <functional>

#include "tqp/anyon_model.hpp"

namespace tqp::detail {

// Fills the F and R tables of a model whose rules are already complete.
// fsym(a,b,c,d,e,f) is evaluated on every admissible tuple; rsym(a,b,c) on
// every (a,b,c) with N(a,b,c) = 1.
void build_tables(AnyonModel& model,
                  const std::function<cplx(label_t, label_t, label_t, label_t, label_t, label_t)>& fsym,
                  const std::function<cplx(label_t, label_t, label_t)>& rsym);

// Allocates empty F/R storage sized for the model's label count.
void init_storage(AnyonModel& model);

} // namespace tqp::detail
