#include "ergocert/model.hpp"

namespace ergocert::model {

const char* to_string(ReactionClass c) {
  switch (c) {
    case ReactionClass::Zeroth: return "zeroth";
    case ReactionClass::Degradation: return "degradation";
    case ReactionClass::Catalytic: return "catalytic";
    case ReactionClass::Conversion: return "conversion";
    case ReactionClass::Bimolecular: return "bimolecular";
  }
  return "?";
}

std::vector<int> StoichiometricDecomposition::first_order() const {
  std::vector<int> out(dg);
  out.insert(out.end(), ct.begin(), ct.end());
  out.insert(out.end(), cv.begin(), cv.end());
  return out;
}

IntMatrix StoichiometricDecomposition::block(const std::vector<int>& cols) const {
  IntMatrix out(S.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = S.col(cols[j]);
  return out;
}

Matrix StoichiometricDecomposition::Wct() const {
  Matrix w = Matrix::Zero(static_cast<Eigen::Index>(ct.size()), d());
  for (std::size_t a = 0; a < ct.size(); ++a) w(static_cast<Eigen::Index>(a), reactant[ct[a]]) = 1.0;
  return w;
}

StoichiometricDecomposition decompose(const ReactionNetwork& net) {
  StoichiometricDecomposition dec;
  dec.species = net.species;
  const int K = net.K();
  dec.S = IntMatrix::Zero(net.d(), K);
  dec.classes.resize(K);
  dec.reactant.assign(K, -1);
  for (int k = 0; k < K; ++k) {
    const Reaction& r = net.reactions[k];
    dec.rates.push_back(r.rate);
    dec.S.col(k) = net.stoichiometry(k);
    switch (r.order()) {
      case 0:
        dec.classes[k] = ReactionClass::Zeroth;
        dec.s0.push_back(k);
        break;
      case 1: {
        dec.reactant[k] = r.reactants.front().first;
        const bool has_neg = (dec.S.col(k).array() < 0).any();
        const bool has_pos = (dec.S.col(k).array() > 0).any();
        if (has_neg && has_pos) {
          dec.classes[k] = ReactionClass::Conversion;
          dec.cv.push_back(k);
        } else if (has_neg) {
          dec.classes[k] = ReactionClass::Degradation;
          dec.dg.push_back(k);
        } else {
          dec.classes[k] = ReactionClass::Catalytic;
          dec.ct.push_back(k);
        }
        break;
      }
      default: {
        dec.classes[k] = ReactionClass::Bimolecular;
        dec.sb.push_back(k);
        const auto& c = r.reactants;
        if (c.size() == 1)
          dec.bimolecular_reactants.emplace_back(c[0].first, c[0].first);
        else
          dec.bimolecular_reactants.emplace_back(c[0].first, c[1].first);
      }
    }
  }
  return dec;
}

bool has_conversion(const StoichiometricDecomposition& dec) { return !dec.cv.empty(); }

}  // namespace ergocert::model
