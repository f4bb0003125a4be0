"""The truncated projective oscillator and Picard-class state counts.

On CP^n only the vacuum and the n single excitations survive; their
energies under log(1 + sum(m_j + 1/2)) are log(1 + n/2) and log(2 + n/2).
For class l the states are labelled by n-subsets of {1..n+l}.
"""

from qhbundle import oscillator, picard

for n in (1, 2, 3):
    print(f"n = {n}")
    print(oscillator.spectrum(n).to_csv())

print("unrestricted C^2 oscillator up to 3 quanta (comparison only):")
print(oscillator.unrestricted_spectrum(2, 3).to_csv())

for n in (1, 10, 10**6):
    ok, gap = oscillator.vacuum_is_nondegenerate(n)
    print(f"n = {n}: vacuum nondegenerate {ok}, gap {gap:.3e}")

# %% counting
print(" n\\l " + "".join(f"{l:>7}" for l in range(1, 7)))
for n in range(1, 7):
    print(f"{n:>4} " + "".join(f"{picard.state_count(n, l):>7}" for l in range(1, 7)))
print("labels for n = 2, l = 2:", [s.subset for s in picard.enumerate_states(2, 2)])
print(picard.vacuum_degeneracy_note(2, 2))
