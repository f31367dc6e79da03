#include "hochkit/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hochkit::lin {

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x)
{
    if (a.is_zero() || x.empty()) return;
    SparseVec out;
    out.reserve(y.size() + x.size());
    auto i = y.begin();
    auto j = x.begin();
    while (i != y.end() || j != x.end()) {
        if (j == x.end() || (i != y.end() && i->first < j->first)) {
            out.push_back(std::move(*i));
            ++i;
        } else if (i == y.end() || j->first < i->first) {
            out.emplace_back(j->first, a * j->second);
            ++j;
        } else {
            Scalar s = i->second + a * j->second;
            if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

SparseVec scaled(const SparseVec& x, const Scalar& a)
{
    SparseVec out;
    if (a.is_zero()) return out;
    out.reserve(x.size());
    for (const auto& [r, v] : x) {
        Scalar s = v * a;
        if (!s.is_zero()) out.emplace_back(r, std::move(s));
    }
    return out;
}

SparseVec from_dense(const std::vector<Scalar>& v)
{
    SparseVec out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!v[i].is_zero()) out.emplace_back(i, v[i]);
    return out;
}

std::vector<Scalar> to_dense(const SparseVec& v, int n, Field f)
{
    std::vector<Scalar> out(n, Scalar(0, f));
    for (const auto& [r, x] : v) out.at(r) = x;
    return out;
}

Matrix::Matrix(int rows, int cols, Field f) : rows_(rows), field_(f), cols_(cols) {}

Matrix Matrix::identity(int n, Field f)
{
    Matrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.cols_[i].emplace_back(i, Scalar(1, f));
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows, Field f)
{
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(r, c, f);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (rows[i][j] != 0) m.add(i, j, Scalar(rows[i][j], f));
    return m;
}

void Matrix::add(int r, int c, const Scalar& v)
{
    if (r < 0 || r >= rows_ || c < 0 || c >= cols()) throw std::out_of_range("matrix index");
    if (v.field() != field_) throw FieldMismatch();
    axpy(cols_[c], Scalar(1, field_), SparseVec{{r, v}});
}

Scalar Matrix::at(int r, int c) const
{
    for (const auto& [i, v] : cols_.at(c))
        if (i == r) return v;
    return Scalar(0, field_);
}

SparseVec Matrix::apply(const SparseVec& x) const
{
    SparseVec y;
    for (const auto& [c, v] : x) axpy(y, v, cols_.at(c));
    return y;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (cols() != o.rows()) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix m(rows_, o.cols(), field_);
    for (int c = 0; c < o.cols(); ++c) m.cols_[c] = apply(o.cols_[c]);
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const
{
    if (rows_ != o.rows_ || cols() != o.cols()) throw std::invalid_argument("matrix shape mismatch in sum");
    Matrix m(*this);
    for (int c = 0; c < cols(); ++c) axpy(m.cols_[c], Scalar(1, field_), o.cols_[c]);
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(-1, field_)); }

Matrix Matrix::scaled(const Scalar& a) const
{
    Matrix m(rows_, cols(), field_);
    for (int c = 0; c < cols(); ++c) m.cols_[c] = lin::scaled(cols_[c], a);
    return m;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols(), rows_, field_);
    for (int c = 0; c < cols(); ++c)
        for (const auto& [r, v] : cols_[c]) t.cols_[r].emplace_back(c, v);
    return t;
}

bool Matrix::is_zero() const
{
    return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& v) { return v.empty(); });
}

std::size_t Matrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

Reduction::Reduction(const Matrix& m) : field_(m.field())
{
    int n = m.cols();
    reduced_.resize(n);
    transform_.resize(n);
    for (int j = 0; j < n; ++j) {
        SparseVec v = m.col(j);
        SparseVec t{{j, Scalar(1, field_)}};
        while (!v.empty()) {
            int low = v.back().first;
            auto it = pivot_col_.find(low);
            if (it == pivot_col_.end()) break;
            const SparseVec& p = reduced_[it->second];
            Scalar c = -(v.back().second / p.back().second);
            axpy(v, c, p);
            axpy(t, c, transform_[it->second]);
        }
        if (!v.empty()) {
            pivot_col_[v.back().first] = j;
            ++rank_;
        }
        reduced_[j] = std::move(v);
        transform_[j] = std::move(t);
    }
}

std::vector<SparseVec> Reduction::kernel() const
{
    std::vector<SparseVec> out;
    for (std::size_t j = 0; j < reduced_.size(); ++j)
        if (reduced_[j].empty()) out.push_back(transform_[j]);
    return out;
}

std::optional<SparseVec> Reduction::solve(const SparseVec& y) const
{
    SparseVec r = y;
    SparseVec x;
    while (!r.empty()) {
        auto it = pivot_col_.find(r.back().first);
        if (it == pivot_col_.end()) return std::nullopt;
        const SparseVec& p = reduced_[it->second];
        Scalar c = r.back().second / p.back().second;
        axpy(r, -c, p);
        axpy(x, c, transform_[it->second]);
    }
    return x;
}

SparseVec Reduction::normal_form(const SparseVec& y) const
{
    SparseVec r = y;
    // Pivot vectors have their lowest entry on the pivot row, so clearing rows from the
    // bottom up never reintroduces an already cleared row.
    for (int pos = static_cast<int>(r.size()) - 1; pos >= 0;) {
        if (pos >= static_cast<int>(r.size())) {
            pos = static_cast<int>(r.size()) - 1;
            continue;
        }
        int row = r[pos].first;
        auto it = pivot_col_.find(row);
        if (it == pivot_col_.end()) {
            --pos;
            continue;
        }
        const SparseVec& p = reduced_[it->second];
        Scalar c = r[pos].second / p.back().second;
        axpy(r, -c, p);
        // re-locate the first entry with row < current row
        pos = static_cast<int>(std::lower_bound(r.begin(), r.end(), row,
                                                [](const auto& e, int v) { return e.first < v; }) - r.begin()) - 1;
    }
    return r;
}

int rank(const Matrix& m) { return Reduction(m).rank(); }

void GradedSpace::add(int degree, const std::string& label)
{
    auto& idx = index_[degree];
    if (idx.count(label)) throw std::invalid_argument("duplicate label in degree " + std::to_string(degree) + ": " + label);
    idx.emplace(label, static_cast<int>(labels_[degree].size()));
    labels_[degree].push_back(label);
}

int GradedSpace::dim(int degree) const
{
    auto it = labels_.find(degree);
    return it == labels_.end() ? 0 : static_cast<int>(it->second.size());
}

int GradedSpace::total_dim() const
{
    int n = 0;
    for (const auto& [d, l] : labels_) n += static_cast<int>(l.size());
    return n;
}

const std::vector<std::string>& GradedSpace::labels(int degree) const
{
    static const std::vector<std::string> none;
    auto it = labels_.find(degree);
    return it == labels_.end() ? none : it->second;
}

std::optional<int> GradedSpace::index(int degree, const std::string& label) const
{
    auto it = index_.find(degree);
    if (it == index_.end()) return std::nullopt;
    auto jt = it->second.find(label);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

std::vector<int> GradedSpace::degrees() const
{
    std::vector<int> out;
    for (const auto& [d, l] : labels_) out.push_back(d);
    return out;
}

SparseMap::SparseMap(GradedSpace source, GradedSpace target, int shift, Field f)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift), field_(f)
{
}

Matrix SparseMap::block(int d) const
{
    auto it = blocks_.find(d);
    if (it != blocks_.end()) return it->second;
    return Matrix(target_.dim(d + shift_), source_.dim(d), field_);
}

void SparseMap::set_block(int d, Matrix m)
{
    if (m.rows() != target_.dim(d + shift_) || m.cols() != source_.dim(d))
        throw std::invalid_argument("block shape does not match spaces");
    if (m.field() != field_) throw FieldMismatch();
    blocks_[d] = std::move(m);
}

void SparseMap::add(int source_degree, int row, int col, const Scalar& v)
{
    auto it = blocks_.find(source_degree);
    if (it == blocks_.end())
        it = blocks_.emplace(source_degree, Matrix(target_.dim(source_degree + shift_), source_.dim(source_degree), field_)).first;
    it->second.add(row, col, v);
}

std::vector<Entry> SparseMap::entries() const
{
    std::vector<Entry> out;
    for (const auto& [d, m] : blocks_) {
        const auto& src = source_.labels(d);
        const auto& tgt = target_.labels(d + shift_);
        for (int c = 0; c < m.cols(); ++c)
            for (const auto& [r, v] : m.col(c)) out.push_back({tgt[r], src[c], v});
    }
    return out;
}

std::vector<int> SparseMap::block_degrees() const
{
    std::vector<int> out;
    for (const auto& [d, m] : blocks_) out.push_back(d);
    return out;
}

SparseMap SparseMap::compose(const SparseMap& inner) const
{
    SparseMap out(inner.source_, target_, inner.shift_ + shift_, field_);
    for (int d : inner.source_.degrees()) {
        Matrix m = block(d + inner.shift_) * inner.block(d);
        if (!m.is_zero()) out.set_block(d, std::move(m));
    }
    return out;
}

SparseMap SparseMap::operator+(const SparseMap& o) const
{
    if (o.shift_ != shift_) throw std::invalid_argument("shift mismatch in map sum");
    SparseMap out(source_, target_, shift_, field_);
    for (int d : source_.degrees()) {
        Matrix m = block(d) + o.block(d);
        if (!m.is_zero()) out.set_block(d, std::move(m));
    }
    return out;
}

SparseMap SparseMap::scaled(const Scalar& a) const
{
    SparseMap out(source_, target_, shift_, field_);
    for (const auto& [d, m] : blocks_) out.blocks_[d] = m.scaled(a);
    return out;
}

bool SparseMap::is_zero() const
{
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

int rank(const SparseMap& m)
{
    int r = 0;
    for (int d : m.block_degrees()) r += rank(m.block(d));
    return r;
}

std::optional<GradedVector> solve(const SparseMap& m, const GradedVector& y)
{
    int d = y.degree - m.shift();
    for (const auto& [r, v] : y.coords) {
        if (r >= m.target().dim(y.degree)) throw std::invalid_argument("vector does not lie in target degree");
        (void)v;
    }
    Reduction red(m.block(d));
    auto x = red.solve(y.coords);
    if (!x) return std::nullopt;
    return GradedVector{d, *x};
}

BoundedComplex make_complex(const GradedSpace& space, const std::map<int, Matrix>& d, int lo, int hi, Field f)
{
    BoundedComplex c;
    c.space = space;
    c.differential = SparseMap(space, space, 1, f);
    for (const auto& [k, m] : d)
        if (m.cols() > 0 && m.rows() > 0) c.differential.set_block(k, m);
    c.lo = lo;
    c.hi = hi;
    return c;
}

std::vector<int> d_squared_failures(const BoundedComplex& c)
{
    std::vector<int> bad;
    for (int k = c.lo; k + 2 <= c.hi; ++k) {
        Matrix a = c.d(k);
        Matrix b = c.d(k + 1);
        if (a.cols() == 0 || b.rows() == 0) continue;
        if (!(b * a).is_zero()) bad.push_back(k);
    }
    return bad;
}

HomologyTable homology(const BoundedComplex& c)
{
    if (auto bad = d_squared_failures(c); !bad.empty())
        throw std::runtime_error("d^2 != 0 starting in degree " + std::to_string(bad.front()));
    HomologyTable out;
    for (int k = c.lo; k <= c.hi; ++k) {
        int n = c.space.dim(k);
        int r_out = n ? rank(c.d(k)) : 0;
        int r_in = c.space.dim(k - 1) && n ? rank(c.d(k - 1)) : 0;
        HomologyEntry e;
        e.dim = n - r_out - r_in;
        if (k == c.lo && c.lo_cut) {
            e.reliable = false;
            e.note = "window edge";
        }
        if (k == c.hi && c.hi_cut) {
            e.reliable = false;
            e.note = "window edge";
        }
        if (c.incomplete.count(k) || c.incomplete.count(k - 1)) {
            e.reliable = false;
            e.note = "truncated";
        }
        out[k] = e;
    }
    return out;
}

HomologyBasis::HomologyBasis(const Matrix& d_in, const Matrix& d_out, int dim) : field_(d_out.field())
{
    Matrix out = d_out.cols() == dim ? d_out : Matrix(0, dim, field_);
    Matrix in = d_in.rows() == dim ? d_in : Matrix(dim, 0, field_);
    std::vector<SparseVec> cycles = Reduction(out).kernel();
    n_boundary_cols_ = in.cols();
    Matrix bz(dim, in.cols() + static_cast<int>(cycles.size()), field_);
    for (int c = 0; c < in.cols(); ++c) bz.set_col(c, in.col(c));
    for (std::size_t i = 0; i < cycles.size(); ++i) bz.set_col(in.cols() + static_cast<int>(i), cycles[i]);
    Reduction r(bz);
    for (std::size_t i = 0; i < cycles.size(); ++i)
        if (r.is_pivot_column(in.cols() + static_cast<int>(i))) reps_.push_back(cycles[i]);
    Matrix br(dim, in.cols() + static_cast<int>(reps_.size()), field_);
    for (int c = 0; c < in.cols(); ++c) br.set_col(c, in.col(c));
    for (std::size_t i = 0; i < reps_.size(); ++i) br.set_col(in.cols() + static_cast<int>(i), reps_[i]);
    combined_.emplace(br);
    boundaries_.emplace(in);
}

std::vector<Scalar> HomologyBasis::coords(const SparseVec& cycle) const
{
    auto x = combined_->solve(cycle);
    if (!x) throw std::invalid_argument("vector is not a cycle in the span of boundaries and representatives");
    std::vector<Scalar> out(reps_.size(), Scalar(0, field_));
    for (const auto& [c, v] : *x)
        if (c >= n_boundary_cols_) out[c - n_boundary_cols_] = v;
    return out;
}

bool HomologyBasis::is_boundary(const SparseVec& v) const { return boundaries_->in_image(v); }

Matrix induced_map(const Matrix& f, const HomologyBasis& src, const HomologyBasis& tgt)
{
    Matrix m(tgt.dim(), src.dim(), f.field());
    for (int i = 0; i < src.dim(); ++i) {
        SparseVec img = f.apply(src.reps()[i]);
        m.set_col(i, from_dense(tgt.coords(img)));
    }
    return m;
}

}  // namespace hochkit::lin
