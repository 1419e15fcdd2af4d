#ifndef MRB_MRB_HPP
#define MRB_MRB_HPP

#include <mrb/rational.hpp>
#include <mrb/matrix.hpp>
#include <mrb/linalg.hpp>
#include <mrb/algebra.hpp>
#include <mrb/leibniz.hpp>
#include <mrb/representation.hpp>
#include <mrb/cochain.hpp>
#include <mrb/cohomology.hpp>
#include <mrb/deformation.hpp>
#include <mrb/extensions.hpp>

#endif  // MRB_MRB_HPP
