#pragma once

#include "qenrich/error.hpp"
#include "qenrich/quantale.hpp"
#include "qenrich/matrix.hpp"
#include "qenrich/space.hpp"
#include "qenrich/relation.hpp"
#include "qenrich/limits.hpp"
#include "qenrich/macneille.hpp"
#include "qenrich/canext.hpp"
#include "qenrich/funext.hpp"
#include "qenrich/dot.hpp"
#include "qenrich/random.hpp"
