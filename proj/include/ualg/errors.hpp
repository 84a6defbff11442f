#ifndef UALG_ERRORS_HPP_
#define UALG_ERRORS_HPP_

#include <cstddef>    // for size_t
#include <stdexcept>  // for runtime_error
#include <string>     // for string
#include <utility>    // for pair

namespace ualg {

  // Base class for every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class SignatureError : public Error {
   public:
    using Error::Error;
  };

  class TermError : public Error {
   public:
    using Error::Error;
  };

  class CongruenceError : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    using Error::Error;
  };

  // A search or construction ran out of its configured budget.  Never used
  // to signal a negative answer.
  class BudgetExceeded : public Error {
   public:
    using Error::Error;
  };

  // An algebra that was required to lie in SP(Y) does not.  The witness is a
  // pair of distinct elements that no homomorphism into a member of Y
  // separates.
  class MembershipError : public Error {
   public:
    MembershipError(std::string const&                   what,
                    std::pair<std::size_t, std::size_t> witness)
        : Error(what), _witness(witness) {}

    std::pair<std::size_t, std::size_t> witness() const noexcept {
      return _witness;
    }

   private:
    std::pair<std::size_t, std::size_t> _witness;
  };

  // A theorem hypothesis failed for the instance at position index().
  class HypothesisError : public Error {
   public:
    HypothesisError(std::string const& what, std::size_t index)
        : Error(what), _index(index) {}

    std::size_t index() const noexcept {
      return _index;
    }

   private:
    std::size_t _index;
  };

}  // namespace ualg

#endif  // UALG_ERRORS_HPP_
