"""Published gait values for subject (A) and the knee model built from them.

Every table is indexed by gait node t0..t4 (rows) and x/y/z component
(columns). Values are kept at the 4-decimal precision they were printed with.
"""
import numpy as np

GAIT_PERIOD = 1.1652  # s
TIMES = np.array([0.0, 0.2913, 0.5826, 0.8739, 1.1652])  # s, nodes at 0/25/50/75/100 %
LEG_MASS = 4.0  # kg

# Femoral-frame rotation vector theta (rad).
THETA = np.array([
    [0.0, -0.0872, -0.1745],
    [-0.0872, -0.3490, -0.0872],
    [-0.0872, -0.3490, -0.1745],
    [-0.1745, -1.1344, -0.0872],
    [0.0, -0.0872, -0.1745],
])

# Femoral-frame external knee torque (N m).
TORQUE_FEMORAL = np.array([
    [7.5, 7.5, 0.0],
    [-40.0, 0.0, 5.0],
    [-15.0, 0.0, 0.0],
    [0.0, 0.0, -5.0],
    [7.5, 15.0, 0.0],
])

# Grood-Suntay angles (alpha, beta, gamma) solving theta at each node (rad).
ANGLES = np.array([
    [-0.5786, 0.1684, 0.5869],
    [-0.0760, 0.3546, 0.1740],
    [-0.1851, 0.3751, 0.2927],
    [0.0859, 1.1227, 0.2044],
    [-0.5786, 0.1684, 0.5869],
])

# Femoral angular velocity, derivative of the theta interpolants (rad/s).
OMEGA_FEMORAL = np.array([
    [-1.0981, -5.6920, 1.5984],
    [0.0999, 1.1983, -0.3997],
    [-0.1998, -1.7974, -0.0002],
    [-0.1997, -2.0970, 0.3993],
    [1.8975, 12.8820, -1.5983],
])

# Tibial-frame torque (N m).
TORQUE_TIBIAL = np.array([
    [0.9361, 8.1637, 6.7065],
    [-18.3490, -2.8400, -35.7800],
    [-5.2618, -1.5857, -13.9570],
    [2.0263, 0.8581, -4.4898],
    [0.8255, 15.6310, 6.0191],
])

# Tibial-frame angular velocity (rad/s).
OMEGA_TIBIAL = np.array([
    [-1.6519, -5.7721, -0.3366],
    [0.2847, 1.2324, -0.0762],
    [0.1451, -1.8010, -0.0647],
    [0.1623, -2.1350, 0.1098],
    [1.6574, 13.0050, 0.4656],
])

# Linear torque model M' = C w' + d: rows are x', y', z' torque.
REGRESSION_COEFFS = np.array([
    [-16.9430, -0.5003, 80.9290],
    [-15.1720, 1.5740, 34.8270],
    [-39.7610, 0.9071, 140.8000],
])
REGRESSION_INTERCEPTS = np.array([-3.0709, 3.7511, -7.1266])

# Moments of inertia (kg m^2). The ODE coefficients were computed with 0.0053;
# the anthropometric estimate is 0.005334.
INERTIA = (0.0672, 0.0672, 0.0053)
IZZ_ANTHROPOMETRIC = 0.005334

# Knee ODE coefficients as printed, keyed by (component, exponents).
ODE_COEFFS = {
    (0, (0, 1, 1)): 0.9211,
    (0, (1, 0, 0)): -252.1279,
    (0, (0, 1, 0)): -7.4449,
    (0, (0, 0, 1)): 1204.3005,
    (0, (0, 0, 0)): -45.6979,
    (1, (1, 0, 1)): -0.9211,
    (1, (1, 0, 0)): -225.7738,
    (1, (0, 1, 0)): 23.4226,
    (1, (0, 0, 1)): 518.2589,
    (1, (0, 0, 0)): 55.8199,
    (2, (1, 0, 0)): -7502.0754,
    (2, (0, 1, 0)): 171.1509,
    (2, (0, 0, 1)): 26566.0377,
    (2, (0, 0, 0)): -1344.6415,
}

# Upper-triangle electromagnetic entries F_12, F_13, F_23 as printed:
# {pair: (linear coefficients on (wx, wy, wz), constant)}.
EM_ENTRIES = {
    (0, 1): ((0.0, 0.0, 0.9211), 109.1644),
    (0, 2): ((0.0, 0.4605, 0.0), 4353.1879),
    (1, 2): ((-0.4605, 0.0, 0.0), 173.5540),
}

# Constant-level energy surfaces.
ENERGY_DIAGONAL = (0.2120, 0.2120, 0.8484)
ENERGY_CENTER = (376.8816, -9453.1767, -118.5152)
SEMI_AXIS_SQUARED_PER_K = (4.7169, 4.7169, 1.1786)

TABLES = {
    "theta_femoral": (THETA, "rad"),
    "torque_femoral": (TORQUE_FEMORAL, "N*m"),
    "grood_suntay_angles": (ANGLES, "rad"),
    "omega_femoral": (OMEGA_FEMORAL, "rad/s"),
    "torque_tibial": (TORQUE_TIBIAL, "N*m"),
    "omega_tibial": (OMEGA_TIBIAL, "rad/s"),
}
