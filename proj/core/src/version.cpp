#include "affrigid/affrigid.hpp"

namespace affrigid {

const char* version() { return AFFRIGID_VERSION_STRING; }

} // namespace affrigid
