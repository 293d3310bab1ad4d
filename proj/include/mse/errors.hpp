#ifndef MSE_ERRORS_HPP
#define MSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mse {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NegativeCount : public Error { public: using Error::Error; };
class EmptyTable : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class UnknownDataset : public Error { public: using Error::Error; };

class InvalidProbability : public Error { public: using Error::Error; };
class InvalidShape : public Error { public: using Error::Error; };
class NonPositiveArgument : public Error { public: using Error::Error; };

class SingularDesign : public Error { public: using Error::Error; };
class ZeroMargin : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class NonConvergence : public Error { public: using Error::Error; };
class TooManyFailures : public Error { public: using Error::Error; };
class ZeroDenominator : public Error { public: using Error::Error; };

}  // namespace mse

#endif
