"""Reference table values, transcribed as printed (two decimals)."""

TABLE1 = {
    1: ('6.20', '2.97', '7.50', '3.60'),
    2: ('30.10', '6.45', '19.04', '4.08'),
    3: ('33.23', '2.76', '48.41', '4.02'),
    4: ('160.26', '4.86', '131.96', '4.00'),
    5: ('189.66', '2.03', '371.69', '3.98'),
    6: ('1006.37', '3.74', '1081.41', '4.01'),
    7: ('1228.85', '1.56', '3214.43', '4.08'),
    8: ('6824.92', '2.92', '9688.79', '4.15'),
    9: ('41026.02', '5.90', '29513.14', '4.24'),
    10: ('48256.77', '2.31', '90615.57', '4.34'),
    11: ('290952.54', '4.63', '279938.15', '4.45'),
    12: ('349620.27', '1.83', '869086.04', '4.56'),
    13: ('2111307.71', '3.65', '2709093.04', '4.68'),
    14: ('2574265.41', '1.46', '8473443.11', '4.81'),
    15: ('15560289.93', '2.89', '26579732.02', '4.93'),
    16: ('97333587.55', '5.90', '83583833.49', '5.07'),
    17: ('115969563.37', '2.29', '263411915.59', '5.21'),
    18: ('722847752.94', '4.65', '831717944.55', '5.35'),
    19: ('871653553.89', '1.82', '2630570690.35', '5.50'),
    20: ('5417789519.97', '3.67', '8332555187.06', '5.65'),
    21: ('6595055877.28', '1.45', '26429805276.11', '5.81'),
    22: ('40899906101.43', '2.91', '83932453654.78', '5.97'),
    23: ('259252743272.20', '5.96', '266850519584.53', '6.14'),
    24: ('310499878990.33', '2.30', '849248495359.50', '6.31'),
    25: ('1961049546483.68', '4.70', '2705224738143.37', '6.49'),
    26: ('2368374639649.50', '1.83', '8624643594697.38', '6.67'),
    27: ('14911710286211.34', '3.71', '27518163013281.19', '6.86'),
    28: ('18135450483667.70', '1.45', '41019570013812.60', '3.29'),
    29: ('113880130793454.00', '2.94', '130998204833437.00', '3.38'),
}

TABLE2 = {
    1: ('4.33', '2.07', '7.37', '3.53'),
    2: ('11.43', '2.45', '18.42', '3.95'),
    3: ('27.16', '2.25', '45.95', '3.81'),
    4: ('75.45', '2.29', '122.71', '3.72'),
    5: ('170.10', '1.82', '338.06', '3.62'),
    6: ('567.14', '2.10', '961.65', '3.57'),
    7: ('1220.89', '1.55', '2793.79', '3.54'),
    8: ('4538.22', '1.94', '8226.36', '3.53'),
    9: ('12766.04', '1.83', '24468.26', '3.52'),
    10: ('37187.86', '1.78', '73319.47', '3.51'),
    11: ('123256.82', '1.96', '220934.61', '3.51'),
    12: ('306955.57', '1.61', '668631.16', '3.51'),
    13: ('1130329.16', '1.95', '2030435.84', '3.51'),
    14: ('2538585.40', '1.44', '6182563.84', '3.51'),
    15: ('10061753.29', '1.86', '18866284.73', '3.50'),
    16: ('28738270.47', '1.74', '57669986.66', '3.50'),
    17: ('87854839.94', '1.73', '176522092.15', '3.49'),
    18: ('296082176.27', '1.90', '540876548.13', '3.48'),
    19: ('756838941.68', '1.58', '1658551646.91', '3.46'),
    20: ('2833677349.55', '1.92', '5088463711.51', '3.45'),
    21: ('6455418097.84', '1.41', '15616220827.15', '3.43'),
    22: ('26004576057.05', '1.85', '47928112273.66', '3.41'),
    23: ('73877196562.03', '1.70', '147095889815.31', '3.38'),
    24: ('232271215052.04', '1.72', '451306226910.06', '3.35'),
    25: ('783545598025.84', '1.87', '1384015627524.11', '3.32'),
    26: ('2036657012715.75', '1.57', '4241595234936.98', '3.28'),
    27: ('7656067872952.33', '1.90', '12988339862084.01', '3.23'),
    28: ('17619025700877.80', '1.41', '40421839917705.90', '3.24'),
    29: ('71372189120343.00', '1.84', '126539989037161.00', '3.26'),
}

TABLE3 = {
    1: ('2.13', '9.57'),
    2: ('6.33', '23.52'),
    3: ('17.16', '55.95'),
    4: ('58.45', '139.71'),
    5: ('132.10', '376.06'),
    6: ('437.14', '1091.65'),
    7: ('881.89', '3132.79'),
    8: ('3784.22', '8980.36'),
    9: ('11065.04', '26169.26'),
    10: ('34083.86', '76423.47'),
    11: ('111668.82', '232522.61'),
    12: ('268692.57', '706894.16'),
    13: ('1021358.16', '2139406.84'),
    14: ('2223695.40', '6497453.84'),
    15: ('9009134.29', '19918903.73'),
    16: ('25523638.47', '60884618.66'),
    17: ('79898250.94', '184478681.15'),
    18: ('274132621.27', '562826103.13'),
    19: ('656961166.68', '1758429421.91'),
    20: ('2610932705.55', '5311208355.51'),
    21: ('5858023843.84', '16213615081.15'),
    22: ('24070220849.05', '49862467481.66'),
    23: ('66627010346.03', '154346076031.31'),
    24: ('215124307774.04', '468453134188.06'),
    25: ('728384617086.84', '1439176608463.11'),
    26: ('1880765334594.75', '4397486913057.98'),
    27: ('7147401214946.33', '13497006520090.01'),
    28: ('16191280040503.80', '41849585578079.90'),
    29: ('66820995497879.00', '131091182659625.00'),
}
