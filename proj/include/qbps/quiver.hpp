#pragma once
#include <string>
#include <utility>
#include <vector>

namespace qbps {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

struct Quiver {
  int vertex_count = 0;
  std::vector<Arrow> arrows;

  int arrow_index(const std::string& name) const;
  bool symmetric() const; // equal arrow counts i->j and j->i for every pair
  void validate() const;  // index ranges, duplicate names
};

using DimVector = std::vector<long>;

long total(const DimVector& g);
std::string dim_str(const DimVector& g); // "[2,1]"

long euler_form(const Quiver& Q, const DimVector& g, const DimVector& h);
long rep_dim(const Quiver& Q, const DimVector& g);
bool simple_exists(const Quiver& Q, const DimVector& g);
std::pair<Quiver, DimVector> frame(const Quiver& Q, const DimVector& g, int m);

// all gamma with 0 < |gamma| <= G, ascending lexicographic
std::vector<DimVector> sectors_up_to(int vertex_count, long G);

} // namespace qbps
