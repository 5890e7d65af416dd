// Frozen (x, Ai(x), Ai'(x)) triples from a 30-digit multiprecision
// evaluation on x = -20 + 0.37 k. Generated once; do not regenerate
// from this crate's own routines.
const AIRY_REF: &[(f64, f64, f64)] = &[
(-2.00000000000000000e+01, -1.76406127077984698e-01, 8.92862856736471255e-01),
(-1.96299999999999990e+01, 2.13992307188865444e-01, 7.17831381846862349e-01),
(-1.92600000000000016e+01, 1.48803955139124200e-01, -9.83201594364428000e-01),
(-1.88900000000000006e+01, -2.32087291520669925e-01, -6.08003114656765375e-01),
(-1.85199999999999996e+01, -1.32940532191781230e-01, 1.01926038095169869e+00),
(-1.81499999999999986e+01, 2.40245270064956967e-01, 5.58729736521062503e-01),
(-1.77800000000000011e+01, 1.31647338083286575e-01, -1.01504196921097489e+00),
(-1.74100000000000001e+01, -2.39903653907152986e-01, -5.74518973037834169e-01),
(-1.70399999999999991e+01, -1.45988302196504188e-01, 9.72958815192746296e-01),
(-1.66700000000000017e+01, 2.29603930924145189e-01, 6.52134200606060088e-01),
(-1.63000000000000007e+01, 1.75195586927892721e-01, -8.83218176990024029e-01),
(-1.59299999999999997e+01, -2.04842003740459189e-01, -7.79114735685916493e-01),
(-1.55600000000000005e+01, -2.15611440588286851e-01, 7.26087687190536846e-01),
(-1.51900000000000013e+01, 1.58766571838470733e-01, 9.28744913735262356e-01),
(-1.48200000000000003e+01, 2.58723836242292393e-01, -4.78681142968865381e-01),
(-1.44499999999999993e+01, -8.44814997816191599e-02, -1.05356230280328500e+00),
(-1.40800000000000001e+01, -2.89047429111719822e-01, 1.28951925482987534e-01),
(-1.37100000000000009e+01, -2.00742869653089892e-02, 1.08275570151447842e+00),
(-1.33399999999999999e+01, 2.83827762405069906e-01, 3.01767148359790349e-01),
(-1.29699999999999989e+01, 1.44414156152911421e-01, -9.33115921532637338e-01),
(-1.25999999999999996e+01, -2.18080099918026571e-01, -7.32775470917368610e-01),
(-1.22300000000000004e+01, -2.57380012068836816e-01, 5.45160967467177238e-01),
(-1.18599999999999994e+01, 7.88087639572464388e-02, 1.01291452239079427e+00),
(-1.14900000000000002e+01, 3.06124493045391688e-01, 5.25721023884617930e-02),
(-1.11200000000000010e+01, 1.11960481651315905e-01, -9.57773699640306120e-01),
(-1.07500000000000000e+01, -2.34647500931595143e-01, -6.77570436420927624e-01),
(-1.03800000000000008e+01, -2.78083743505465053e-01, 4.65281454414129214e-01),
(-1.00099999999999998e+01, 3.02601235858610505e-02, 9.99792085667883024e-01),
(-9.64000000000000057e+00, 3.04376981245960798e-01, 3.16203169342886670e-01),
(-9.26999999999999957e+00, 2.19951633465274604e-01, -7.15664392649813630e-01),
(-8.90000000000000036e+00, -1.17266306371751811e-01, -9.12892757425250223e-01),
(-8.52999999999999936e+00, -3.28058035870247178e-01, -1.16454455614031199e-01),
(-8.16000000000000014e+00, -1.91947373434047164e-01, 7.74332803190529328e-01),
(-7.79000000000000092e+00, 1.41510180340345681e-01, 8.60461533505320397e-01),
(-7.41999999999999993e+00, 3.39413430598145827e-01, 1.20731348225033244e-01),
(-7.05000000000000071e+00, 2.21104569536365397e-01, -6.99700294637124798e-01),
(-6.67999999999999972e+00, -9.59579011096669265e-02, -8.76247265010029697e-01),
(-6.31000000000000050e+00, -3.34251732158476145e-01, -3.20164866173496099e-01),
(-5.93999999999999950e+00, -3.04926737277635695e-01, 4.59708870951544057e-01),
(-5.57000000000000028e+00, -4.26792670839078805e-02, 8.59338241957310234e-01),
(-5.19999999999999929e+00, 2.52580338104745172e-01, 6.39905166901282962e-01),
(-4.83000000000000007e+00, 3.80316540903007094e-01, 1.81712681565584094e-02),
(-4.46000000000000085e+00, 2.70195273256261415e-01, -5.73781966147084987e-01),
(-4.08999999999999986e+00, 1.64682001349274968e-03, -8.03104465045829441e-01),
(-3.71999999999999886e+00, -2.70152348280532917e-01, -6.03215278702802560e-01),
(-3.35000000000000142e+00, -4.11909304689870526e-01, -1.39928424741579766e-01),
(-2.98000000000000043e+00, -3.72297111475346110e-01, 3.37044456093834488e-01),
(-2.60999999999999943e+00, -1.84895295671474891e-01, 6.36904575719442589e-01),
(-2.24000000000000199e+00, 6.85416413418436787e-02, 6.93555412361527734e-01),
(-1.87000000000000099e+00, 3.03594100407572509e-01, 5.51397221288660755e-01),
(-1.50000000000000000e+00, 4.64256577748869415e-01, 3.09186967202410401e-01),
(-1.12999999999999901e+00, 5.32163250655449116e-01, 6.38589333805219400e-02),
(-7.60000000000001563e-01, 5.19012962126865207e-01, -1.22076646973122857e-01),
(-3.90000000000000568e-01, 4.51966305831851656e-01, -2.26821163062757292e-01),
(-1.99999999999995737e-02, 3.60203965142136262e-01, -2.58747708035052149e-01),
(3.50000000000001421e-01, 2.66657872160770915e-01, -2.40717297335551583e-01),
(7.19999999999998863e-01, 1.85191922956074284e-01, -1.97193471136258208e-01),
(1.08999999999999986e+00, 1.21513700801715113e-01, -1.47088941201259288e-01),
(1.46000000000000085e+00, 7.57316659651299656e-02, -1.01746063140402826e-01),
(1.82999999999999829e+00, 4.50182299525341972e-02, -6.60190902363949617e-02),
(2.19999999999999929e+00, 2.56104044217732481e-02, -4.04972632444531785e-02),
(2.57000000000000028e+00, 1.39818759942718588e-02, -2.36184931576247439e-02),
(2.94000000000000128e+00, 7.34257878126812116e-03, -1.31531407233296937e-02),
(3.30999999999999872e+00, 3.71648516561440094e-03, -7.01849193233426705e-03),
(3.67999999999999972e+00, 1.81621742868105589e-03, -3.59835226083668512e-03),
(4.05000000000000071e+00, 8.58249130263512056e-04, -1.77670050222863475e-03),
(4.41999999999999815e+00, 3.92691935171353196e-04, -8.46500315502194279e-04),
(4.78999999999999915e+00, 1.74182386889669384e-04, -3.89829943672572441e-04),
(5.16000000000000014e+00, 7.49787937020863403e-05, -1.73778962259454981e-04),
(5.53000000000000114e+00, 3.13529700509747688e-05, -7.50854986185320599e-05),
(5.89999999999999858e+00, 1.27470945091845327e-05, -3.14812971171128740e-05),
(6.26999999999999957e+00, 5.04300783050454922e-06, -1.28214181247602365e-05),
(6.64000000000000057e+00, 1.94285008984538691e-06, -5.07705931449623220e-06),
(7.00999999999999801e+00, 7.29391397547372471e-07, -1.95636596778447906e-06),
(7.37999999999999901e+00, 2.67012937814469103e-07, -7.34153662122909181e-07),
(7.75000000000000000e+00, 9.53703896164158474e-08, -2.68492886795326169e-07),
(8.12000000000000099e+00, 3.32541920178838396e-08, -9.57576765604381110e-08),
(8.48999999999999844e+00, 1.13255003690481319e-08, -3.33253331694156612e-08),
(8.85999999999999943e+00, 3.76928717488933466e-09, -1.13235352137791483e-08),
(9.23000000000000043e+00, 1.22645612916294311e-09, -3.75860150290938146e-09),
(9.60000000000000142e+00, 3.90323353041511768e-10, -1.21933377816810705e-09),
(9.96999999999999886e+00, 1.21550066653083452e-10, -3.86788139434642939e-10),
(1.03399999999999999e+01, 3.70521141627445120e-11, -1.20024014057524460e-10),
(1.07100000000000009e+01, 1.10600794476975871e-11, -3.64491200162461924e-11),
(1.10799999999999983e+01, 3.23402487485386648e-12, -1.08367609291093251e-11),
(1.14499999999999993e+01, 9.26645041979017477e-13, -3.15548545313442414e-12),
(1.18200000000000003e+01, 2.60259585354216203e-13, -9.00201302711634953e-13),
(1.21899999999999977e+01, 7.16729743247504888e-14, -2.51689366233803616e-13),
(1.25600000000000023e+01, 1.93591277144792941e-14, -6.89890194389219280e-14),
(1.29299999999999997e+01, 5.13001597991251810e-15, -1.85445659929613009e-14),
(1.32999999999999972e+01, 1.33404390443614605e-15, -4.88990917590957000e-15),
(1.36700000000000017e+01, 3.40526735703652765e-16, -1.26518104867766164e-15),
(1.40399999999999991e+01, 8.53431827488001881e-17, -3.21282886399018181e-16),
(1.44099999999999966e+01, 2.10051469581424821e-17, -8.00969657617029896e-17),
(1.47800000000000011e+01, 5.07832837792939105e-18, -1.96084922032230332e-17),
(1.51499999999999986e+01, 1.20628322354334144e-18, -4.71491615396475326e-18),
(1.55199999999999960e+01, 2.81580862463494239e-19, -1.11379045514687733e-18),
(1.58900000000000006e+01, 6.46057251495070331e-20, -2.58539692086672788e-19),
(1.62599999999999980e+01, 1.45726509586860025e-20, -5.89842746089063664e-20),
(1.66300000000000026e+01, 3.23212847511698251e-21, -1.32287372447091879e-20),
(1.70000000000000000e+01, 7.05019729838861427e-22, -2.91714821929331398e-21),
(1.73699999999999974e+01, 1.51270443256135930e-22, -6.32613608907520065e-22),
(1.77400000000000020e+01, 3.19317092913861329e-23, -1.34939086352249182e-22),
(1.81099999999999994e+01, 6.63251676301039562e-24, -2.83160662606571962e-23),
(1.84799999999999969e+01, 1.35579267922375494e-24, -5.84653150667035596e-24),
(1.88500000000000014e+01, 2.72794435816464385e-25, -1.18797115342919866e-24),
(1.92199999999999989e+01, 5.40345577893522034e-26, -2.37588573789135894e-25),
(1.95899999999999963e+01, 1.05381955762734087e-26, -4.67762087526615011e-26),
(1.99600000000000009e+01, 2.02386879258357994e-27, -9.06713515633246402e-27),
];
