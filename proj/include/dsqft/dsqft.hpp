#ifndef DSQFT_DSQFT_HPP
#define DSQFT_DSQFT_HPP

#include "dsqft/errors.hpp"
#include "dsqft/specfun.hpp"
#include "dsqft/geometry.hpp"
#include "dsqft/oneparticle.hpp"
#include "dsqft/representation.hpp"
#include "dsqft/modloc.hpp"
#include "dsqft/fock.hpp"
#include "dsqft/extended.hpp"
#include "dsqft/config.hpp"
#include "dsqft/suites.hpp"

#endif
