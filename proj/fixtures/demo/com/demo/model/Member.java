package com.demo.model;

import java.util.ArrayList;
import java.util.List;

public class Member extends Entity {
    public enum Tier { BASIC, SILVER, GOLD }

    private final String name;
    private Tier tier = Tier.BASIC;
    private Address address;
    private final List<Loan> loans = new ArrayList<>();
    private double balance;

    public Member(String id, String name) {
        super(id);
        this.name = name;
    }

    public String getName() {
        return name;
    }

    public Tier getTier() {
        return tier;
    }

    public void setAddress(Address address) {
        this.address = address;
    }

    public Address getAddress() {
        return address;
    }

    public double getBalance() {
        return balance;
    }

    public void charge(double amount) {
        if (amount < 0) {
            throw new IllegalArgumentException("negative charge");
        }
        balance += amount;
        touch();
    }

    public void pay(double amount) {
        balance = Math.max(0, balance - amount);
    }

    public int maxLoans() {
        switch (tier) {
            case GOLD:
                return 10;
            case SILVER:
                return 6;
            default:
                return 3;
        }
    }

    public boolean canBorrow() {
        return balance < 20.0 && activeLoans() < maxLoans();
    }

    public long activeLoans() {
        return loans.stream().filter(l -> !l.isReturned()).count();
    }

    void addLoan(Loan loan) {
        loans.add(loan);
    }

    public void upgrade() {
        if (tier == Tier.BASIC) {
            tier = Tier.SILVER;
        } else if (tier == Tier.SILVER) {
            tier = Tier.GOLD;
        }
    }
}
