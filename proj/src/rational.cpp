#include "bispectral/rational.hpp"

namespace bispectral {

std::string rational_str(const mpq_class& q) {
    return q.get_str();
}

std::string GaussianRational::str() const {
    if (im_ == 0) return rational_str(re_);
    std::string istr = rational_str(abs(im_)) + "*i";
    if (re_ == 0) return (im_ < 0 ? "-" : "") + istr;
    return rational_str(re_) + (im_ < 0 ? "-" : "+") + istr;
}

}  // namespace bispectral
