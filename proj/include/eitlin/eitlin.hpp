#pragma once

#include "eitlin/bounds.hpp"
#include "eitlin/frechet.hpp"
#include "eitlin/gamma.hpp"
#include "eitlin/io.hpp"
#include "eitlin/oracle.hpp"
#include "eitlin/parallel.hpp"
#include "eitlin/recon.hpp"
#include "eitlin/rng.hpp"
#include "eitlin/sobolev.hpp"
#include "eitlin/zernike.hpp"
